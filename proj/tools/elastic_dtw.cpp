// elastic-dtw: command line front end of the elastic distance library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.

#include <elastic/benchmark.hpp>
#include <elastic/distances.hpp>
#include <elastic/format.hpp>
#include <elastic/nn.hpp>
#include <elastic/report.hpp>
#include <elastic/synthetic.hpp>
#include <elastic/tuning.hpp>
#include <elastic/ucr.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace elastic;

namespace {

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_DATA = 2;
constexpr int EXIT_RUNTIME = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Helpers
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Inline "1,2,3" list, or "@file" holding values separated by commas or blanks.
TimeSeries read_series(const std::string& source, const char* what) {
    std::string text = source;
    if (!source.empty() && source.front() == '@') {
        std::ifstream in(source.substr(1));
        if (!in) { throw DataError(std::string(what) + ": can not open " + source.substr(1)); }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::vector<double> values;
    for (auto token : split(text, ", \t\r\n")) {
        if (token.empty()) { continue; }
        double v = 0;
        if (!parse_double(token, v)) {
            throw DataError(std::string(what) + ": not a number: '" + std::string(token) + "'");
        }
        values.push_back(v);
    }
    return TimeSeries(std::move(values));
}

Family family_or_usage(const std::string& name) {
    const auto f = parse_family(name);
    if (!f) { throw UsageError("unknown measure '" + name + "'"); }
    return *f;
}

TuningConfig tuning_config(std::uint64_t seed, double exponent, std::size_t pairs, unsigned jobs) {
    TuningConfig cfg;
    cfg.rng_seed = seed;
    cfg.exponent = exponent;
    cfg.pair_sample_size = pairs;
    cfg.jobs = std::max(1u, jobs);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) { throw UsageError(e.what()); }
    return cfg;
}

LabeledDataset load_admissible_train(const std::string& path) {
    auto train = load_split(path, fs::path(path).stem().string(), Split::train);
    const auto adm = admit(train);
    if (!adm.admitted) { throw DataError(path + ": dataset not admissible: " + adm.reason); }
    return train;
}

/// Options shared by the commands taking a distance.
struct MeasureOptions {
    std::string measure;
    std::string param;
    std::string train;
    std::uint64_t seed{0};
    double exponent{5};
    std::size_t pairs{4000};

    void add_to(CLI::App* cmd, bool with_tuning_source) {
        cmd->add_option("--measure", measure, "sqed | dtw | cdtw | wdtw | adtw")->required();
        cmd->add_option("--param", param, "window w (cdtw), weight factor g (wdtw), penalty omega or 'auto' (adtw)");
        if (with_tuning_source) {
            cmd->add_option("--train", train, "training split used by --param auto");
        }
        cmd->add_option("--seed", seed, "seed for --param auto");
        cmd->add_option("--exponent", exponent, "ratio exponent for --param auto");
        cmd->add_option("--pairs", pairs, "pairs sampled for omega' with --param auto");
    }

    /// Validates the flags. Tuning (--param auto) needs `train`, loaded lazily.
    DistanceSpec resolve(const LabeledDataset* tuning_train = nullptr) const {
        const auto f = family_or_usage(measure);
        if (!is_parameterized(f)) {
            if (!param.empty()) { throw UsageError(measure + " takes no --param"); }
            return DistanceSpec::make(f);
        }
        if (param.empty()) { throw UsageError(measure + " requires --param"); }
        if (param == "auto") {
            if (f != Family::adtw) { throw UsageError("--param auto is only available for adtw"); }
            const auto cfg = tuning_config(seed, exponent, pairs, 1);
            std::unique_ptr<LabeledDataset> owned;
            if (tuning_train == nullptr) {
                if (train.empty()) { throw UsageError("--param auto requires --train"); }
                owned = std::make_unique<LabeledDataset>(load_admissible_train(train));
                tuning_train = owned.get();
            }
            const auto result = tune(Family::adtw, *tuning_train, cfg);
            std::cerr << "tuned " << result.chosen.to_string() << '\n';
            return result.chosen;
        }
        double value = 0;
        if (!parse_double(param, value)) { throw UsageError("--param: not a number: '" + param + "'"); }
        try {
            return DistanceSpec::make(f, value);
        } catch (const std::invalid_argument& e) { throw UsageError(e.what()); }
    }
};

void write_to(const std::string& path, const auto& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw std::runtime_error("can not write " + path); }
    writer(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic distances (SQED, DTW, CDTW, WDTW, ADTW), tuning and NN1 benchmarking"};
    app.require_subcommand(1);

    // --- dist
    MeasureOptions dist_opts;
    std::string dist_a, dist_b;
    std::optional<double> dist_cutoff;
    auto* dist = app.add_subcommand("dist", "Distance between two series");
    dist_opts.add_to(dist, true);
    dist->add_option("--a", dist_a, "first series: 1,2,3 or @file")->required();
    dist->add_option("--b", dist_b, "second series: 1,2,3 or @file")->required();
    dist->add_option("--cutoff", dist_cutoff, "early abandoning cutoff");

    // --- path
    MeasureOptions path_opts;
    std::string path_a, path_b, matrix_out, path_out;
    auto* path = app.add_subcommand("path", "Cost matrix and optimal warping path");
    path_opts.add_to(path, true);
    path->add_option("--a", path_a, "first series: 1,2,3 or @file")->required();
    path->add_option("--b", path_b, "second series: 1,2,3 or @file")->required();
    path->add_option("--matrix-out", matrix_out, "cost matrix CSV");
    path->add_option("--path-out", path_out, "warping path CSV");

    // --- tune
    std::string tune_family, tune_train, tune_out;
    std::uint64_t tune_seed = 0;
    double tune_exponent = 5;
    std::size_t tune_pairs = 4000;
    unsigned tune_jobs = 1;
    auto* tune_cmd = app.add_subcommand("tune", "LOOCV parameter search on a training split");
    tune_cmd->add_option("--family", tune_family, "cdtw | wdtw | adtw")->required();
    tune_cmd->add_option("--train", tune_train, "training split (UCR format)")->required();
    tune_cmd->add_option("--out", tune_out, "candidate scores CSV")->required();
    tune_cmd->add_option("--seed", tune_seed, "omega' sampling seed");
    tune_cmd->add_option("--exponent", tune_exponent, "ADTW ratio exponent");
    tune_cmd->add_option("--pairs", tune_pairs, "pairs sampled for omega'");
    tune_cmd->add_option("--jobs", tune_jobs, "worker threads");

    // --- classify
    MeasureOptions cls_opts;
    std::string cls_train, cls_test, cls_out;
    unsigned cls_jobs = 1;
    auto* classify = app.add_subcommand("classify", "NN1 classification of a test split");
    cls_opts.add_to(classify, false);
    classify->add_option("--train", cls_train, "training split")->required();
    classify->add_option("--test", cls_test, "test split")->required();
    classify->add_option("--out", cls_out, "per query CSV");
    classify->add_option("--jobs", cls_jobs, "worker threads");

    // --- bench
    std::string bench_root, bench_datasets = "all", bench_families = "sqed,dtw,cdtw,wdtw,adtw", bench_out;
    std::uint64_t bench_seed = 0;
    double bench_exponent = 5, bench_alpha = 0.05;
    std::size_t bench_pairs = 4000;
    unsigned bench_jobs = 1;
    auto* bench = app.add_subcommand("bench", "Full benchmark: admit, tune, evaluate, compare");
    bench->add_option("--data-root", bench_root, "UCR style root (default: $ELASTIC_DTW_DATA)");
    bench->add_option("--datasets", bench_datasets, "comma separated names, or 'all'");
    bench->add_option("--families", bench_families, "comma separated families");
    bench->add_option("--out-dir", bench_out, "report directory")->required();
    bench->add_option("--seed", bench_seed, "omega' sampling seed");
    bench->add_option("--exponent", bench_exponent, "ADTW ratio exponent");
    bench->add_option("--pairs", bench_pairs, "pairs sampled for omega'");
    bench->add_option("--alpha", bench_alpha, "significance level");
    bench->add_option("--jobs", bench_jobs, "worker threads");

    // --- synth
    std::string synth_out;
    std::uint64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "Write the synthetic UCR style datasets");
    synth->add_option("--out-dir", synth_out, "data root")->required();
    synth->add_option("--seed", synth_seed, "generator seed");

    // --- info
    std::string info_root, info_name;
    auto* info = app.add_subcommand("info", "Dataset metadata and admission status as JSON");
    info->add_option("--data-root", info_root, "UCR style root (default: $ELASTIC_DTW_DATA)");
    info->add_option("--dataset", info_name, "dataset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_USAGE;
    }

    const auto default_root = [](std::string root) {
        if (root.empty()) {
            if (const char* env = std::getenv("ELASTIC_DTW_DATA")) { root = env; }
        }
        if (root.empty()) { throw UsageError("no data root: use --data-root or set ELASTIC_DTW_DATA"); }
        return root;
    };

    try {
        if (*dist) {
            const auto spec = dist_opts.resolve();
            const auto a = read_series(dist_a, "--a");
            const auto b = read_series(dist_b, "--b");
            if (dist_cutoff) {
                if (!(*dist_cutoff >= 0)) { throw UsageError("--cutoff must be >= 0"); }
                const double d = distance_ea(spec, a, b, *dist_cutoff);
                std::cout << (d > *dist_cutoff ? std::string("pruned") : format_double(d)) << '\n';
            } else {
                std::cout << format_double(distance(spec, a, b)) << '\n';
            }
        } else if (*path) {
            const auto spec = path_opts.resolve();
            const auto a = read_series(path_a, "--a");
            const auto b = read_series(path_b, "--b");
            const auto result = warping_path(spec, a, b);
            if (!matrix_out.empty()) {
                const auto m = cost_matrix(spec, a, b);
                write_to(matrix_out, [&](std::ostream& os) { write_csv(os, m); });
            }
            if (!path_out.empty()) {
                write_to(path_out, [&](std::ostream& os) { write_csv(os, std::span<const Step>(result.path)); });
            }
            std::cout << format_double(result.distance) << '\n';
        } else if (*tune_cmd) {
            const auto f = family_or_usage(tune_family);
            if (!is_parameterized(f)) { throw UsageError(tune_family + " has no parameter to tune"); }
            const auto cfg = tuning_config(tune_seed, tune_exponent, tune_pairs, tune_jobs);
            const auto train = load_admissible_train(tune_train);
            const auto result = tune(f, train, cfg);
            write_to(tune_out, [&](std::ostream& os) { write_csv(os, result); });
            std::cout << format_double(result.chosen.param()) << '\n';
        } else if (*classify) {
            family_or_usage(cls_opts.measure);
            const auto train = load_split(cls_train, fs::path(cls_train).stem().string(), Split::train);
            const auto test = load_split(cls_test, fs::path(cls_test).stem().string(), Split::test);
            const auto spec = cls_opts.resolve(&train);
            const auto outcome = evaluate(train, test, spec, std::max(1u, cls_jobs));
            if (!cls_out.empty()) { write_to(cls_out, [&](std::ostream& os) { write_csv(os, outcome); }); }
            std::cout << format_double(outcome.accuracy) << '\n';
        } else if (*bench) {
            const fs::path root = default_root(bench_root);
            std::vector<Family> families;
            try {
                families = parse_families(bench_families);
            } catch (const std::invalid_argument& e) { throw UsageError(e.what()); }
            BenchmarkConfig cfg;
            cfg.tuning = tuning_config(bench_seed, bench_exponent, bench_pairs, 1);
            cfg.alpha = bench_alpha;
            cfg.jobs = std::max(1u, bench_jobs);

            std::vector<std::string> names;
            if (bench_datasets == "all") {
                names = list_datasets(root);
            } else {
                for (auto n : split(bench_datasets, ",")) {
                    if (!trim(n).empty()) { names.emplace_back(trim(n)); }
                }
            }
            if (names.empty()) { throw DataError("no dataset found under " + root.string()); }

            std::vector<DatasetPair> pairs;
            std::vector<std::pair<std::string, std::string>> load_failures;
            for (const auto& name : names) {
                try {
                    pairs.push_back(load_pair(root, name));
                } catch (const DataError& e) {
                    std::cerr << "[bench] " << name << ": load error: " << e.what() << '\n';
                    load_failures.emplace_back(name, e.what());
                }
            }

            const auto result = run_benchmark(pairs, families, cfg, [](const DatasetResult& ds) {
                if (!ds.admission.admitted) {
                    std::cout << ds.name << ": excluded: " << ds.admission.reason << '\n' << std::flush;
                    return;
                }
                std::cout << ds.name << ':';
                for (const auto& c : ds.cells) {
                    std::cout << ' ' << to_string(c.family) << '=' << (c.error.empty() ? format_double(c.accuracy) : "failed");
                }
                std::cout << '\n' << std::flush;
            });

            // Load failures are listed alongside the excluded datasets
            auto full = result;
            for (const auto& [name, what] : load_failures) {
                full.datasets.push_back({name, {false, "load error: " + what}, nlohmann::ordered_json{{"name", name}}, {}});
            }
            std::stable_sort(full.datasets.begin(), full.datasets.end(), [&](const auto& x, const auto& y) {
                return std::find(names.begin(), names.end(), x.name) < std::find(names.begin(), names.end(), y.name);
            });
            write_report(bench_out, full);

            std::size_t succeeded = 0;
            for (const auto& ds : result.datasets) {
                for (const auto& c : ds.cells) { succeeded += c.error.empty() ? 1 : 0; }
            }
            if (result.matrix.datasets.empty()) {
                std::cerr << "no admitted dataset\n";
                return EXIT_DATA;
            }
            if (succeeded == 0) {
                std::cerr << "every benchmark cell failed\n";
                return EXIT_RUNTIME;
            }
        } else if (*synth) {
            for (const auto& pair : synthetic::full_suite(synth_seed)) {
                save_pair(synth_out, pair);
                std::cout << pair.name << '\n';
            }
        } else if (*info) {
            const auto pair = load_pair(default_root(info_root), info_name);
            auto j = metadata(pair);
            const auto adm = admit(pair);
            j["admitted"] = adm.admitted;
            j["reason"] = adm.reason;
            std::cout << j.dump(2) << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return EXIT_DATA;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_RUNTIME;
    }
    return 0;
}
