#pragma once

#include <elastic/distances.hpp>
#include <elastic/nn.hpp>
#include <elastic/stats.hpp>
#include <elastic/tuning.hpp>
#include <elastic/ucr.hpp>

#include <json.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace elastic {

struct BenchmarkConfig {
    TuningConfig tuning;
    /// Significance level used to group classifiers in the mean rank diagram.
    double alpha{0.05};
    /// Worker threads over (dataset, family) cells. Does not affect results.
    unsigned jobs{1};
};

/// One (dataset, family) run: tune on train (parameterized families), then NN1 on test.
struct CellResult {
    Family family;
    std::optional<DistanceSpec> chosen;
    std::optional<TuningResult> tuning;
    double accuracy{std::numeric_limits<double>::quiet_NaN()};
    std::string error;   // empty on success
};

struct DatasetResult {
    std::string name;
    Admission admission;
    nlohmann::ordered_json metadata;
    std::vector<CellResult> cells;   // empty if not admitted, else one per family
};

struct PairwiseTest {
    std::string a;
    std::string b;
    WilcoxonResult test;
    double p_holm;
    WinTieLoss wtl;   // from the point of view of `a`
};

struct ScatterData {
    std::string y;   // classifier on the vertical axis
    std::string x;
    std::vector<std::string> datasets;
    std::vector<double> y_accuracy;
    std::vector<double> x_accuracy;
    WinTieLoss wtl;
};

/// Statistics computed over the datasets with a complete row.
struct ComparisonReport {
    double alpha{0.05};
    std::vector<std::string> datasets;
    std::vector<MeanRank> ranks;
    std::vector<PairwiseTest> pairwise;   // every pair, Holm adjusted as one family
    std::vector<ScatterData> scatters;
    /// ADTW against the per dataset best of the other families, when ADTW and another family are present.
    std::optional<PairwiseTest> versus_best;
};

struct BenchmarkResult {
    std::vector<Family> families;
    std::vector<DatasetResult> datasets;
    AccuracyMatrix matrix;   // admitted datasets only; failed cells are NaN
    ComparisonReport report;
};

using ProgressFn = std::function<void(const DatasetResult&)>;

/** admit -> tune -> evaluate on every dataset, then the comparison report.
 *  Per cell failures are recorded and do not stop the run. The result only depends on the inputs.
 *  `progress` is called once per dataset: right away for an excluded one, otherwise when all its cells are
 *  done (possibly from a worker thread, serialized).
 */
[[nodiscard]] BenchmarkResult run_benchmark(std::span<const DatasetPair> pairs, std::span<const Family> families,
                                            const BenchmarkConfig& cfg, const ProgressFn& progress = {});

/// Statistics part of run_benchmark. Pairs (a, b) are built as (later family, earlier family).
[[nodiscard]] ComparisonReport compare(const AccuracyMatrix& matrix, double alpha);

/// "SQED,DTW,..." -> families. Throws std::invalid_argument on an unknown or repeated name.
[[nodiscard]] std::vector<Family> parse_families(std::string_view list);

} // namespace elastic
