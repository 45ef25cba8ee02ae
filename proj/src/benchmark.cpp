#include <elastic/benchmark.hpp>
#include <elastic/format.hpp>
#include <elastic/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace elastic {

namespace {

CellResult run_cell(const DatasetPair& pair, Family family, const TuningConfig& tcfg) {
    CellResult cell{family, std::nullopt, std::nullopt, std::numeric_limits<double>::quiet_NaN(), {}};
    try {
        if (is_parameterized(family)) {
            cell.tuning = tune(family, pair.train, tcfg);
            cell.chosen = cell.tuning->chosen;
        } else {
            cell.chosen = DistanceSpec::make(family);
        }
        cell.accuracy = evaluate(pair.train, pair.test, *cell.chosen).accuracy;
    } catch (const std::exception& e) {
        cell.error = e.what();
        cell.accuracy = std::numeric_limits<double>::quiet_NaN();
    }
    return cell;
}

} // namespace

std::vector<Family> parse_families(std::string_view list) {
    std::vector<Family> out;
    for (auto token : split(list, ",")) {
        token = trim(token);
        if (token.empty()) { continue; }
        const auto f = parse_family(token);
        if (!f) { throw std::invalid_argument("unknown distance family '" + std::string(token) + "'"); }
        if (std::find(out.begin(), out.end(), *f) != out.end()) {
            throw std::invalid_argument("family listed twice: " + std::string(token));
        }
        out.push_back(*f);
    }
    if (out.empty()) { throw std::invalid_argument("no distance family given"); }
    return out;
}

ComparisonReport compare(const AccuracyMatrix& matrix, double alpha) {
    ComparisonReport report;
    report.alpha = alpha;
    const auto complete = matrix.complete_rows();
    report.datasets = complete.datasets;
    if (complete.cells.empty()) { return report; }

    report.ranks = mean_ranks(complete);

    const auto& names = complete.classifiers;
    std::vector<double> raw;
    for (std::size_t lo = 0; lo < names.size(); ++lo) {
        for (std::size_t hi = lo + 1; hi < names.size(); ++hi) {
            const auto a = complete.column(names[hi]);
            const auto b = complete.column(names[lo]);
            const auto test = wilcoxon_signed_rank(a, b);
            const auto wtl = win_tie_loss(a, b);
            report.pairwise.push_back({names[hi], names[lo], test, test.p_value, wtl});
            report.scatters.push_back({names[hi], names[lo], complete.datasets, a, b, wtl});
            raw.push_back(test.p_value);
        }
    }
    const auto adjusted = holm_adjust(raw);
    for (std::size_t k = 0; k < adjusted.size(); ++k) { report.pairwise[k].p_holm = adjusted[k]; }

    const std::string target = to_string(Family::adtw);
    if (names.size() >= 2 && std::find(names.begin(), names.end(), target) != names.end()) {
        const auto a = complete.column(target);
        const auto b = best_alternative(complete, target);
        const auto test = wilcoxon_signed_rank(a, b);
        const auto wtl = win_tie_loss(a, b);
        report.versus_best = PairwiseTest{target, "BEST", test, test.p_value, wtl};
        report.scatters.push_back({target, "BEST", complete.datasets, a, b, wtl});
    }
    return report;
}

BenchmarkResult run_benchmark(std::span<const DatasetPair> pairs, std::span<const Family> families,
                              const BenchmarkConfig& cfg, const ProgressFn& progress) {
    cfg.tuning.validate();
    BenchmarkResult result;
    result.families.assign(families.begin(), families.end());
    result.datasets.resize(pairs.size());

    // Flatten admitted (dataset, family) cells into independent jobs
    struct Job {
        std::size_t dataset;
        std::size_t family;
    };
    std::vector<Job> jobs;
    std::vector<std::size_t> remaining(pairs.size(), 0);
    for (std::size_t d = 0; d < pairs.size(); ++d) {
        auto& ds = result.datasets[d];
        ds.name = pairs[d].name;
        ds.admission = admit(pairs[d]);
        ds.metadata = metadata(pairs[d]);
        if (!ds.admission.admitted) {
            if (progress) { progress(ds); }
            continue;
        }
        ds.cells.resize(families.size(), CellResult{Family::sqed, std::nullopt, std::nullopt, 0, {}});
        remaining[d] = families.size();
        for (std::size_t f = 0; f < families.size(); ++f) { jobs.push_back({d, f}); }
    }

    // Tuning runs single threaded inside a cell: parallelism is over cells.
    TuningConfig tcfg = cfg.tuning;
    tcfg.jobs = 1;
    std::mutex mutex;
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t k) {
        const auto [d, f] = jobs[k];
        auto cell = run_cell(pairs[d], families[f], tcfg);
        const std::lock_guard lock(mutex);
        result.datasets[d].cells[f] = std::move(cell);
        if (--remaining[d] == 0 && progress) { progress(result.datasets[d]); }
    });

    auto& m = result.matrix;
    for (auto f : families) { m.classifiers.emplace_back(to_string(f)); }
    for (const auto& ds : result.datasets) {
        if (!ds.admission.admitted) { continue; }
        m.datasets.push_back(ds.name);
        std::vector<double> row;
        for (const auto& cell : ds.cells) { row.push_back(cell.accuracy); }
        m.cells.push_back(std::move(row));
    }
    result.report = compare(m, cfg.alpha);
    return result;
}

} // namespace elastic
