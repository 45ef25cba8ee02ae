#pragma once

#include <elastic/benchmark.hpp>

#include <filesystem>
#include <iosfwd>

namespace elastic {

/** Writes the benchmark report bundle into `out_dir` (created if needed):
 *   accuracy.csv         datasets x classifiers, "NA" for a failed cell
 *   datasets.csv         admission status and per cell errors
 *   datasets.json        dataset metadata
 *   parameters.csv       chosen parameter per (dataset, family)
 *   pairwise_tests.csv   Wilcoxon statistic, raw and Holm p-values, wins/ties/losses per pair
 *   mean_ranks.csv / mean_ranks.svg
 *   versus_best.csv      ADTW against the best other family, when available
 *   scatter_<Y>_vs_<X>.csv / .svg
 *   tuning/<dataset>_<FAMILY>.csv   full candidate score curves
 *  All files are a pure function of `result`.
 */
void write_report(const std::filesystem::path& out_dir, const BenchmarkResult& result);

void write_accuracy_csv(std::ostream& os, const AccuracyMatrix& m);
void write_pairwise_csv(std::ostream& os, const ComparisonReport& report);
void write_mean_ranks_csv(std::ostream& os, const ComparisonReport& report);
void write_scatter_csv(std::ostream& os, const ScatterData& scatter);

/// Minimal mean rank diagram: classifiers on a rank axis, bars joining groups not significantly different.
void write_mean_ranks_svg(std::ostream& os, const ComparisonReport& report);

/// Accuracy scatter with the equal accuracy diagonal and the win/tie/loss counts.
void write_scatter_svg(std::ostream& os, const ScatterData& scatter);

} // namespace elastic
