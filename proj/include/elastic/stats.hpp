#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elastic {

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Wilcoxon signed-rank test
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Remaining sample size up to which the exact null distribution is used.
inline constexpr std::size_t WILCOXON_EXACT_MAX = 25;

struct WilcoxonResult {
    double statistic;      // W = min(W+, W-)
    double w_plus;         // sum of the ranks of positive differences a-b
    double p_value;        // two-sided
    std::size_t n;         // number of nonzero differences
    bool exact;
    bool degenerate;       // no nonzero difference: p = 1
};

/** Two-sided paired test on a - b. Zero differences are dropped, tied |differences| share their mean rank.
 *  Exact (conditional on the observed ranks) for n <= WILCOXON_EXACT_MAX, otherwise normal approximation
 *  with tie and continuity corrections.
 *  Throws std::invalid_argument on different or zero lengths.
 */
[[nodiscard]] WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Holm step-down adjustment; results in the input order, monotone and capped at 1.
[[nodiscard]] std::vector<double> holm_adjust(std::span<const double> pvalues);

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Accuracy matrices
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Datasets x classifiers. Missing cells hold NaN.
struct AccuracyMatrix {
    std::vector<std::string> datasets;
    std::vector<std::string> classifiers;
    std::vector<std::vector<double>> cells;

    [[nodiscard]] std::size_t column_index(std::string_view classifier) const;
    [[nodiscard]] std::vector<double> column(std::string_view classifier) const;
    [[nodiscard]] bool row_complete(std::size_t row) const;
    /// Same matrix restricted to its complete rows.
    [[nodiscard]] AccuracyMatrix complete_rows() const;
};

struct MeanRank {
    std::string classifier;
    double rank;
};

/// Average rank per classifier, rank 1 being the most accurate; tied accuracies share their mean rank.
/// Throws std::invalid_argument on a missing cell or an empty matrix.
[[nodiscard]] std::vector<MeanRank> mean_ranks(const AccuracyMatrix& m);

/// Per dataset, the best accuracy among the classifiers other than `target`.
[[nodiscard]] std::vector<double> best_alternative(const AccuracyMatrix& m, std::string_view target);

struct WinTieLoss {
    std::size_t wins{0};    // a > b
    std::size_t ties{0};
    std::size_t losses{0};
};

[[nodiscard]] WinTieLoss win_tie_loss(std::span<const double> a, std::span<const double> b);

} // namespace elastic
