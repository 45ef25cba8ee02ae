#pragma once

#include <elastic/series.hpp>

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elastic {

inline constexpr double POSITIVE_INFINITY = std::numeric_limits<double>::infinity();

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Distance family and parameter
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

enum class Family { sqed, dtw, cdtw, wdtw, adtw };

/// Upper case display name, e.g. "ADTW".
[[nodiscard]] const char* to_string(Family f) noexcept;

/// Case insensitive parse of a family name.
[[nodiscard]] std::optional<Family> parse_family(std::string_view name);

/// True for the families carrying a parameter (CDTW, WDTW, ADTW).
[[nodiscard]] constexpr bool is_parameterized(Family f) noexcept {
    return f == Family::cdtw || f == Family::wdtw || f == Family::adtw;
}

/** A distance family and its parameter.
 *  - SQED, DTW: no parameter
 *  - CDTW: window w, a nonnegative integer
 *  - WDTW: weight factor g > 0
 *  - ADTW: penalty omega >= 0
 *  Invalid parameters raise std::invalid_argument at construction.
 */
class DistanceSpec {
public:
    [[nodiscard]] static DistanceSpec sqed() { return {Family::sqed, 0}; }
    [[nodiscard]] static DistanceSpec dtw() { return {Family::dtw, 0}; }
    [[nodiscard]] static DistanceSpec cdtw(std::size_t window);
    [[nodiscard]] static DistanceSpec wdtw(double g);
    [[nodiscard]] static DistanceSpec adtw(double omega);

    /// Generic constructor; `param` is ignored for SQED/DTW and must be integral for CDTW.
    [[nodiscard]] static DistanceSpec make(Family f, double param = 0);

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] double param() const noexcept { return param_; }
    [[nodiscard]] std::size_t window() const noexcept { return static_cast<std::size_t>(param_); }

    /// e.g. "DTW", "CDTW(w=3)", "ADTW(omega=0.5)"
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const DistanceSpec&, const DistanceSpec&) = default;

private:
    DistanceSpec(Family f, double p) : family_(f), param_(p) {}

    Family family_;
    double param_;
};

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Kernels
// All kernels run in O(min(l_S, l_T)) space over two rolling rows.
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Sum of squared differences. Throws LengthMismatch.
[[nodiscard]] double sqed(const TimeSeries& s, const TimeSeries& t);

[[nodiscard]] double dtw(const TimeSeries& s, const TimeSeries& t);

/// Sakoe-Chiba band of half-width `window`. Throws UndefinedWindow if window < |l_S - l_T|.
[[nodiscard]] double cdtw(const TimeSeries& s, const TimeSeries& t, std::size_t window);

/// Costs multiplied by the logistic weight of |i-j|, with l = max(l_S, l_T).
[[nodiscard]] double wdtw(const TimeSeries& s, const TimeSeries& t, double g);

/// Amerced DTW: every step that does not advance both series costs an extra `omega`.
[[nodiscard]] double adtw(const TimeSeries& s, const TimeSeries& t, double omega);

/// weight(d) = 1 / (1 + exp(-g * (d - len/2))) for d = 0 .. len-1.
[[nodiscard]] std::vector<double> weight_vector(double g, std::size_t len);

/// Process-wide memoized `weight_vector`, safe for concurrent use. Each (g, len) is computed once.
[[nodiscard]] std::shared_ptr<const std::vector<double>> cached_weight_vector(double g, std::size_t len);

/// Dispatch on the family. Same value as calling the kernel directly.
[[nodiscard]] double distance(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t);

/** Early abandoned and pruned distance.
 *  Returns the exact distance when it is <= cutoff, otherwise a value > cutoff (+INF).
 *  Cells whose cumulative cost exceeds the cutoff are discarded; the computation stops as soon as a whole
 *  row is discarded.
 */
[[nodiscard]] double distance_ea(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t, double cutoff);

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Full cost matrix, warping paths
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// (l_S+1) x (l_T+1) matrix of cumulative costs, with the +INF border and a 0 top-left corner.
class CostMatrix {
public:
    CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, POSITIVE_INFINITY) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols_ + j]; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return cells_[i * cols_ + j]; }
    /// Bottom right cell, i.e. the distance.
    [[nodiscard]] double result() const noexcept { return cells_.back(); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cells_;
};

/// Naive full-matrix evaluation. Used for inspection and as the reference for the rolling kernels.
[[nodiscard]] CostMatrix cost_matrix(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t);

/// cost_matrix(spec, s, t).result()
[[nodiscard]] double naive_distance(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t);

struct PathResult {
    WarpingPath path;
    double distance;
};

/// An optimal warping path, backtracked preferring the diagonal, then left (j-1), then top (i-1).
[[nodiscard]] PathResult warping_path(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t);

/** Cost of a given path under `spec`, accumulated in path order the same way the kernels do.
 *  For an optimal path this reproduces the distance exactly.
 *  Returns +INF if the path leaves the CDTW band; throws std::invalid_argument on an invalid path.
 */
[[nodiscard]] double path_cost(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t,
                               std::span<const Step> path);

/// CSV grid, one matrix row per line, "inf" for infinite cells.
void write_csv(std::ostream& os, const CostMatrix& m);

/// "i,j" header then one 1-based step per line.
void write_csv(std::ostream& os, std::span<const Step> path);

} // namespace elastic
