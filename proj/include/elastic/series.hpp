#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elastic {

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Errors
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Base class of every error raised because of the data being processed (as opposed to misuse of the API).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lock-step measures (SQED) require series of the same length.
struct LengthMismatch : DataError {
    LengthMismatch(std::size_t a, std::size_t b);
};

/// CDTW with a window smaller than the length difference has no valid warping path.
struct UndefinedWindow : DataError {
    UndefinedWindow(std::size_t window, std::size_t a, std::size_t b);
};

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Time series
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// Univariate series of finite doubles, at least one element long. Immutable once built.
class TimeSeries {
public:
    /// Throws DataError if `values` is empty or holds a non finite value.
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::initializer_list<double> values) : TimeSeries(std::vector<double>(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
};

/// Squared difference, the point-to-point cost used by every measure.
[[nodiscard]] constexpr double point_cost(double a, double b) noexcept {
    const double d = a - b;
    return d * d;
}

[[nodiscard]] TimeSeries reverse(const TimeSeries& s);

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Datasets
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

enum class Split { train, test };

[[nodiscard]] const char* to_string(Split s) noexcept;

struct LabeledSeries {
    TimeSeries series;
    std::string label;   // opaque token, compared as a string

    friend bool operator==(const LabeledSeries&, const LabeledSeries&) = default;
};

/// A train or test split. Loading may produce a dataset violating the admission rules (variable length,
/// missing values); the flags record it and `admit` (ucr.hpp) decides whether the dataset is usable.
struct LabeledDataset {
    std::string name;
    Split split{Split::train};
    std::vector<LabeledSeries> items;
    bool has_missing{false};

    [[nodiscard]] std::size_t size() const noexcept { return items.size(); }
    [[nodiscard]] bool empty() const noexcept { return items.empty(); }
    [[nodiscard]] const LabeledSeries& operator[](std::size_t i) const { return items[i]; }

    /// True if at least two series have different lengths.
    [[nodiscard]] bool variable_length() const noexcept;
    /// Length of the first series (0 if empty).
    [[nodiscard]] std::size_t length() const noexcept;
    /// Class label -> number of exemplars, ordered by label.
    [[nodiscard]] std::vector<std::pair<std::string, std::size_t>> class_counts() const;

    friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Warping paths
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

/// One alignment of S_i with T_j, 1-based.
struct Step {
    std::size_t i;
    std::size_t j;
    friend bool operator==(const Step&, const Step&) = default;
};

using WarpingPath = std::vector<Step>;

/// True iff `p` starts at (1,1), ends at (len_s, len_t), and every step advances i and/or j by at most one.
[[nodiscard]] bool validate_path(std::span<const Step> p, std::size_t len_s, std::size_t len_t) noexcept;

} // namespace elastic
