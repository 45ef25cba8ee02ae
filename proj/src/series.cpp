#include <elastic/series.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace elastic {

LengthMismatch::LengthMismatch(std::size_t a, std::size_t b)
    : DataError("series lengths differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")") {}

UndefinedWindow::UndefinedWindow(std::size_t window, std::size_t a, std::size_t b)
    : DataError("window " + std::to_string(window) + " is smaller than the length difference of series of lengths " +
                std::to_string(a) + " and " + std::to_string(b)) {}

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) { throw DataError("time series must hold at least one value"); }
    const auto bad = std::find_if(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
    if (bad != values_.end()) {
        throw DataError("time series value at position " + std::to_string(bad - values_.begin() + 1) +
                        " is not finite");
    }
}

TimeSeries reverse(const TimeSeries& s) {
    return TimeSeries(std::vector<double>(s.values().rbegin(), s.values().rend()));
}

const char* to_string(Split s) noexcept { return s == Split::train ? "train" : "test"; }

bool LabeledDataset::variable_length() const noexcept {
    return std::any_of(items.begin(), items.end(),
                       [l = length()](const LabeledSeries& x) { return x.series.size() != l; });
}

std::size_t LabeledDataset::length() const noexcept { return items.empty() ? 0 : items.front().series.size(); }

std::vector<std::pair<std::string, std::size_t>> LabeledDataset::class_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& x : items) { ++counts[x.label]; }
    return {counts.begin(), counts.end()};
}

bool validate_path(std::span<const Step> p, std::size_t len_s, std::size_t len_t) noexcept {
    if (p.empty() || len_s == 0 || len_t == 0) { return false; }
    if (p.front() != Step{1, 1} || p.back() != Step{len_s, len_t}) { return false; }
    for (std::size_t k = 1; k < p.size(); ++k) {
        const auto& a = p[k - 1];
        const auto& b = p[k];
        const bool continuous = a.i <= b.i && b.i <= a.i + 1 && a.j <= b.j && b.j <= a.j + 1;
        if (!continuous || a == b) { return false; }
    }
    return true;
}

} // namespace elastic
