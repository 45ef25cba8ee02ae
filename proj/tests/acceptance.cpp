// Acceptance checks: one PASS/FAIL line per criterion.
//
// Usage: acceptance <path to elastic-dtw> <work directory>

#include "oracle.hpp"

#include <elastic/benchmark.hpp>
#include <elastic/distances.hpp>
#include <elastic/format.hpp>
#include <elastic/report.hpp>
#include <elastic/stats.hpp>
#include <elastic/synthetic.hpp>
#include <elastic/tuning.hpp>
#include <elastic/ucr.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace elastic;
namespace fs = std::filesystem;

namespace {

/// Collects the violations of one criterion.
struct Check {
    std::size_t cases{0};
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures.size() < 20) { failures.push_back(what); }
        if (!ok && failures.size() == 20) { failures.push_back("..."); }
    }
    [[nodiscard]] bool ok() const { return failures.empty(); }
};

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::string describe(const TimeSeries& s) {
    std::vector<double> v(s.begin(), s.end());
    return "(" + join(v, ",") + ")";
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

/// Runs a shell command, returns its stdout and sets `status` to the exit status.
std::string run(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) { out.append(buffer.data(), n); }
    const int raw = ::pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
    std::map<std::string, std::string> files;
    if (!fs::exists(root)) { return files; }
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) { continue; }
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[fs::relative(e.path(), root).generic_string()] = ss.str();
    }
    return files;
}

void compare_trees(Check& c, const fs::path& a, const fs::path& b) {
    const auto fa = read_tree(a);
    const auto fb = read_tree(b);
    c.expect(!fa.empty(), "no report file written under " + a.string());
    c.expect(fa.size() == fb.size(), "different file sets: " + std::to_string(fa.size()) + " vs " +
                                         std::to_string(fb.size()));
    for (const auto& [name, content] : fa) {
        const auto it = fb.find(name);
        c.expect(it != fb.end() && it->second == content, "file differs between runs: " + name);
    }
}

const TimeSeries S{1, 1, -1, 1, 1, 1};
const TimeSeries T{1, 1, 1, -1, 1, 1};
const TimeSeries U{1, 1, 1, 1, -1, 1};

struct ToyCase {
    DistanceSpec spec;
    std::array<double, 3> expected;   // (S,S), (S,T), (S,U)
};

std::vector<ToyCase> toy_table() {
    std::vector<ToyCase> cases{
        {DistanceSpec::dtw(), {0, 0, 0}},
        {DistanceSpec::cdtw(1), {0, 0, 8}},
        {DistanceSpec::cdtw(0), {0, 8, 8}},
        {DistanceSpec::wdtw(0.1), {0, 0, 0}},
    };
    for (double omega : {1.0, 2.0, 3.0}) {
        cases.push_back({DistanceSpec::adtw(omega), {0, 2 * omega, std::min(4 * omega, 8.0)}});
    }
    for (double omega : {4.0, 10.0}) { cases.push_back({DistanceSpec::adtw(omega), {0, 8, 8}}); }
    return cases;
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

void ac1(Check& c) {
    const std::array others{&S, &T, &U};
    for (const auto& tc : toy_table()) {
        for (std::size_t k = 0; k < 3; ++k) {
            const double d = distance(tc.spec, S, *others[k]);
            c.expect(std::abs(d - tc.expected[k]) <= 1e-12, tc.spec.to_string() + " case " + std::to_string(k) +
                                                                ": got " + format_double(d));
        }
    }
}

void ac2(Check& c) {
    oracle::Generator gen(20001);
    for (int k = 0; k < 1000; ++k) {
        const auto s = gen.series(gen.integer(1, 7));
        const auto t = gen.series(gen.integer(1, 7));
        const auto w = gen.integer(abs_diff(s.size(), t.size()), std::max(s.size(), t.size()));
        const double g = gen.uniform(0.01, 1);
        const double omega = gen.uniform(0, 10);
        const auto check = [&](const DistanceSpec& spec, auto cost) {
            const double got = distance(spec, s, t);
            const double want = oracle::minimum(s, t, cost);
            c.expect(oracle::close(got, want, 1e-9), spec.to_string() + " " + describe(s) + " " + describe(t) +
                                                         ": " + format_double(got) + " vs " + format_double(want));
        };
        check(DistanceSpec::dtw(), [&](const oracle::Path& p) { return oracle::dtw_cost(s, t, p); });
        check(DistanceSpec::cdtw(w), [&](const oracle::Path& p) { return oracle::cdtw_cost(s, t, p, w); });
        check(DistanceSpec::wdtw(g), [&](const oracle::Path& p) { return oracle::wdtw_cost(s, t, p, g); });
        check(DistanceSpec::adtw(omega), [&](const oracle::Path& p) { return oracle::adtw_cost(s, t, p, omega); });
    }
}

void ac3(Check& c) {
    oracle::Generator gen(30001);
    const std::array<double, 10> ladder{0, 1e-4, 1e-2, 0.1, 0.3, 1, 2, 5, 10, 100};
    for (int k = 0; k < 1000; ++k) {
        // Even cases have equal lengths, odd cases independent lengths
        const auto ls = gen.integer(1, 25);
        const auto lt = k % 2 == 0 ? ls : gen.integer(1, 25);
        const auto s = gen.series(ls);
        const auto t = gen.series(lt);
        const std::string tag = " case " + std::to_string(k);

        double previous = adtw(s, t, ladder[0]);
        for (std::size_t r = 1; r < ladder.size(); ++r) {
            const double current = adtw(s, t, ladder[r]);
            c.expect(previous <= current, "ADTW not monotone at omega=" + format_double(ladder[r]) + tag);
            previous = current;
        }
        c.expect(adtw(s, t, 0) == dtw(s, t), "ADTW_0 != DTW" + tag);

        const double omega = gen.uniform(0, 10);
        if (ls == lt) {
            const double e = sqed(s, t);
            c.expect(adtw(s, t, e + 1) == e, "ADTW(sqed+1) != SQED" + tag);
            const double a = adtw(s, t, omega);
            c.expect(dtw(s, t) <= a && a <= e, "DTW <= ADTW <= SQED violated" + tag);
            c.expect(sqed(s, t) == sqed(t, s), "SQED asymmetric" + tag);
        }

        const auto w = abs_diff(ls, lt) + gen.integer(0, 5);
        const double g = gen.uniform(0.01, 1);
        c.expect(dtw(s, t) == dtw(t, s), "DTW asymmetric" + tag);
        c.expect(cdtw(s, t, w) == cdtw(t, s, w), "CDTW asymmetric" + tag);
        c.expect(wdtw(s, t, g) == wdtw(t, s, g), "WDTW asymmetric" + tag);
        c.expect(adtw(s, t, omega) == adtw(t, s, omega), "ADTW asymmetric" + tag);

        // Reversal permutes the accumulation order: equal up to rounding
        const auto rs = reverse(s);
        const auto rt = reverse(t);
        c.expect(oracle::close(dtw(s, t), dtw(rs, rt), 1e-12), "DTW reversal" + tag);
        c.expect(oracle::close(adtw(s, t, omega), adtw(rs, rt, omega), 1e-12), "ADTW reversal" + tag);
        if (ls == lt) { c.expect(oracle::close(sqed(s, t), sqed(rs, rt), 1e-12), "SQED reversal" + tag); }
    }
}

void ac4(Check& c) {
    oracle::Generator gen(40001);
    for (int k = 0; k < 2000; ++k) {
        const auto s = gen.series(gen.integer(1, 40));
        const auto t = k % 2 == 0 ? gen.series(s.size()) : gen.series(gen.integer(1, 40));
        std::vector<DistanceSpec> specs{DistanceSpec::dtw(), DistanceSpec::cdtw(abs_diff(s.size(), t.size()) + gen.integer(0, 6)),
                                        DistanceSpec::wdtw(gen.uniform(0.01, 1)), DistanceSpec::adtw(gen.uniform(0, 10))};
        if (s.size() == t.size()) { specs.push_back(DistanceSpec::sqed()); }
        const auto& spec = specs[gen.integer(0, specs.size() - 1)];
        const double naive = naive_distance(spec, s, t);
        // Cutoffs around the true value, including the value itself
        const double cutoff = k % 7 == 0 ? naive : naive * gen.uniform(0, 2);
        const double pruned = distance_ea(spec, s, t, cutoff);
        if (naive <= cutoff) {
            c.expect(pruned == naive, spec.to_string() + ": pruned " + format_double(pruned) + " != naive " +
                                          format_double(naive));
        } else {
            c.expect(pruned > cutoff, spec.to_string() + ": pruned " + format_double(pruned) + " <= cutoff " +
                                          format_double(cutoff));
        }
    }
}

void ac5(Check& c) {
    const auto windows = cdtw_window_candidates(100);
    c.expect(windows.size() == 101, "CDTW grid size " + std::to_string(windows.size()));
    for (std::size_t k = 0; k < windows.size(); ++k) { c.expect(windows[k] == k, "CDTW grid value " + std::to_string(k)); }

    const auto gs = wdtw_g_candidates();
    c.expect(gs.size() == 100, "WDTW grid size");
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const double want = static_cast<double>(k + 1) / 100;
        c.expect(gs[k] == want && format_double(gs[k]).size() <= 4, "WDTW grid value " + format_double(gs[k]));
    }

    TuningConfig cfg;
    cfg.exponent = 5;
    const auto ladder = adtw_penalty_candidates(1.0, cfg);
    c.expect(ladder.size() == 100, "ADTW ladder size");
    c.expect(std::abs(ladder.front() - 1e-10) <= 1e-22, "ADTW ladder starts at " + format_double(ladder.front()));
    c.expect(ladder.back() == 1.0, "ADTW ladder ends at " + format_double(ladder.back()));
    for (std::size_t k = 1; k < ladder.size(); ++k) { c.expect(ladder[k - 1] < ladder[k], "ADTW ladder not increasing"); }

    // Two identical pairs of series: LOOCV is perfect for every penalty
    const LabeledDataset tied{"tied",
                              Split::train,
                              {{TimeSeries{0, 0, 0, 0}, "a"},
                               {TimeSeries{0, 0, 0, 0}, "a"},
                               {TimeSeries{3, 3, 3, 3}, "b"},
                               {TimeSeries{3, 3, 3, 3}, "b"}},
                              false};
    const auto r = tune(Family::adtw, tied, cfg);
    bool all_tied = true;
    for (const auto& s : r.scores) { all_tied = all_tied && s.accuracy == r.scores.front().accuracy; }
    c.expect(all_tied, "contrived dataset is not all tied");
    c.expect(r.chosen_index == 49, "median tie-break chose index " + std::to_string(r.chosen_index));
    c.expect(r.chosen.param() == r.scores[49].param, "chosen penalty is not the median candidate");
}

void ac6(Check& c) {
    oracle::Generator gen(60001);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(k) % 12;
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse values to exercise zeros and ties; every third sample continuous
            if (k % 3 == 0) {
                a[i] = gen.uniform(0, 1);
                b[i] = gen.uniform(0, 1);
            } else {
                a[i] = static_cast<double>(gen.integer(0, 6)) / 6;
                b[i] = static_cast<double>(gen.integer(0, 6)) / 6;
            }
        }
        const auto r = wilcoxon_signed_rank(a, b);
        const double want = oracle::wilcoxon_enumerated(a, b);
        c.expect(r.p_value == want, "Wilcoxon n=" + std::to_string(n) + ": " + format_double(r.p_value) + " vs " +
                                        format_double(want));
    }

    const auto holm = holm_adjust(std::vector<double>{0.01, 0.04, 0.03});
    const std::array<double, 3> expected{0.03, 0.06, 0.06};
    for (std::size_t k = 0; k < 3; ++k) {
        c.expect(std::abs(holm[k] - expected[k]) <= 1e-12, "Holm[" + std::to_string(k) + "] = " + format_double(holm[k]));
    }

    // Per dataset ranks: (1,2,3,4), (2.5,2.5,1,4), (4,2,2,2)
    const AccuracyMatrix m{{"d1", "d2", "d3"},
                           {"A", "B", "C", "D"},
                           {{0.9, 0.8, 0.7, 0.6}, {0.5, 0.5, 0.9, 0.1}, {0.6, 0.7, 0.7, 0.7}}};
    const auto ranks = mean_ranks(m);
    const std::array<double, 4> want{7.5 / 3, 6.5 / 3, 5.0 / 3 + 1.0 / 3, 10.0 / 3};
    for (std::size_t k = 0; k < 4; ++k) {
        c.expect(std::abs(ranks[k].rank - want[k]) <= 1e-12, "mean rank of " + ranks[k].classifier + " = " +
                                                                 format_double(ranks[k].rank));
    }
}

void ac7(Check& c, const fs::path& work) {
    const auto data = work / "data";
    fs::remove_all(data);
    for (const auto& pair : synthetic::full_suite(2024)) { save_pair(data, pair); }

    std::vector<DatasetPair> pairs;
    for (const auto& name : list_datasets(data)) { pairs.push_back(load_pair(data, name)); }
    const std::vector families{Family::sqed, Family::dtw, Family::cdtw, Family::wdtw, Family::adtw};
    BenchmarkConfig cfg;
    cfg.tuning.rng_seed = 7;

    std::vector<BenchmarkResult> runs;
    for (int r = 0; r < 2; ++r) {
        runs.push_back(run_benchmark(pairs, families, cfg));
        const auto out = work / ("report" + std::to_string(r + 1));
        fs::remove_all(out);
        write_report(out, runs.back());
    }
    compare_trees(c, work / "report1", work / "report2");

    const auto& result = runs.front();
    c.expect(result.matrix.datasets.size() >= 5, "only " + std::to_string(result.matrix.datasets.size()) +
                                                     " admitted datasets");
    for (std::size_t d = 0; d < result.matrix.datasets.size(); ++d) {
        for (std::size_t f = 0; f < families.size(); ++f) {
            const double acc = result.matrix.cells[d][f];
            c.expect(acc >= 0 && acc <= 1, result.matrix.datasets[d] + " " + result.matrix.classifiers[f] +
                                               ": accuracy " + format_double(acc));
        }
    }

    const auto reports = read_tree(work / "report1");
    for (const auto& ds : result.datasets) {
        if (!ds.admission.admitted) { continue; }
        for (const auto& cell : ds.cells) {
            c.expect(cell.error.empty(), ds.name + " " + to_string(cell.family) + ": " + cell.error);
            if (cell.family != Family::adtw) { continue; }
            const bool curve = cell.tuning && cell.tuning->scores.size() == DEFAULT_CANDIDATES && cell.chosen &&
                               cell.chosen->param() == cell.tuning->scores[cell.tuning->chosen_index].param;
            c.expect(curve, ds.name + ": ADTW choice without its score curve");
            const auto file = reports.find("tuning/" + ds.name + "_ADTW.csv");
            std::size_t rows = 0;
            if (file != reports.end()) {
                std::istringstream is(file->second);
                std::string line;
                while (std::getline(is, line)) { rows += !line.empty() && line[0] != '#'; }
            }
            // header line + one row per candidate
            c.expect(rows == DEFAULT_CANDIDATES + 1, ds.name + ": tuning file has " + std::to_string(rows) + " rows");
        }
    }

    const auto& m = result.matrix;
    const auto motif = std::find(m.datasets.begin(), m.datasets.end(), "MotifShift");
    c.expect(motif != m.datasets.end(), "motif dataset not admitted");
    if (motif != m.datasets.end()) {
        const auto row = static_cast<std::size_t>(motif - m.datasets.begin());
        const double a = m.cells[row][m.column_index("ADTW")];
        const double s = m.cells[row][m.column_index("SQED")];
        c.expect(a >= s, "motif dataset: ADTW " + format_double(a) + " < SQED " + format_double(s));
    }
}

void ac8(Check& c, const std::string& cli, const fs::path& work) {
    const std::array others{&S, &T, &U};
    for (const auto& tc : toy_table()) {
        for (std::size_t k = 0; k < 3; ++k) {
            const auto family = tc.spec.family();
            std::string cmd = quote(cli) + " dist --measure " + to_string(family);
            if (is_parameterized(family)) { cmd += " --param " + format_double(tc.spec.param()); }
            cmd += " --a " + join(std::vector<double>(S.begin(), S.end()), ",");
            cmd += " --b " + join(std::vector<double>(others[k]->begin(), others[k]->end()), ",");
            int status = 0;
            const auto out = std::string(trim(run(cmd, status)));
            double parsed = 0;
            const bool ok = status == 0 && parse_double(out, parsed);
            const double lib = distance(tc.spec, S, *others[k]);
            c.expect(ok && parsed == lib && out == format_double(lib),
                     tc.spec.to_string() + " case " + std::to_string(k) + ": cli '" + out + "' vs " + format_double(lib));
        }
    }

    const auto data = work / "data";
    for (int r = 1; r <= 2; ++r) {
        const auto out = work / ("bench" + std::to_string(r));
        fs::remove_all(out);
        int status = 0;
        run(quote(cli) + " bench --data-root " + quote(data.string()) + " --out-dir " + quote(out.string()) +
                " --seed 11 > /dev/null",
            status);
        c.expect(status == 0, "bench run " + std::to_string(r) + " exited with " + std::to_string(status));
    }
    compare_trees(c, work / "bench1", work / "bench2");
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <elastic-dtw binary> <work directory>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    fs::create_directories(work);

    struct Criterion {
        const char* id;
        const char* title;
        double budget_seconds;   // 0: no runtime bound
        std::function<void(Check&)> body;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "toy table exact", 1, ac1},
        {"AC2", "path enumeration oracle", 30, ac2},
        {"AC3", "property suite", 0, ac3},
        {"AC4", "pruned = naive", 0, ac4},
        {"AC5", "tuning grids", 0, ac5},
        {"AC6", "statistics oracles", 0, ac6},
        {"AC7", "desk-scale benchmark", 600, [&](Check& c) { ac7(c, work); }},
        {"AC8", "CLI parity", 0, [&](Check& c) { ac8(c, cli, work); }},
    };

    bool all = true;
    for (const auto& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.budget_seconds > 0 && seconds >= cr.budget_seconds) {
            check.failures.push_back("runtime " + std::to_string(seconds) + "s over the " +
                                     std::to_string(cr.budget_seconds) + "s budget");
        }
        all = all && check.ok();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3fs", seconds);
        std::cout << (check.ok() ? "[PASS] " : "[FAIL] ") << cr.id << ' ' << cr.title << " (" << check.cases
                  << " checks, " << timing << ")\n";
        for (const auto& f : check.failures) { std::cout << "       " << f << '\n'; }
    }
    return all ? 0 : 1;
}
