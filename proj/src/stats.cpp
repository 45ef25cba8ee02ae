#include <elastic/stats.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace elastic {

namespace {

/// 1-based ranks of `values` in ascending order, ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return values[x] < values[y]; });
    std::vector<double> ranks(values.size());
    for (std::size_t start = 0; start < order.size();) {
        std::size_t end = start + 1;
        while (end < order.size() && values[order[end]] == values[order[start]]) { ++end; }
        const double mean = static_cast<double>(start + 1 + end) / 2.0;
        for (std::size_t k = start; k < end; ++k) { ranks[order[k]] = mean; }
        start = end;
    }
    return ranks;
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) { throw std::invalid_argument("wilcoxon: samples of different sizes"); }
    if (a.empty()) { throw std::invalid_argument("wilcoxon: empty samples"); }

    std::vector<double> magnitude;
    std::vector<bool> positive;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        if (d != 0) {
            magnitude.push_back(std::abs(d));
            positive.push_back(d > 0);
        }
    }
    const std::size_t n = magnitude.size();
    if (n == 0) { return {0, 0, 1.0, 0, true, true}; }

    const auto ranks = average_ranks(magnitude);
    double w_plus = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (positive[k]) { w_plus += ranks[k]; }
    }
    const double total = static_cast<double>(n * (n + 1)) / 2.0;
    const double w_minus = total - w_plus;
    const double statistic = std::min(w_plus, w_minus);

    if (n <= WILCOXON_EXACT_MAX) {
        // Mean ranks are multiples of 1/2: count subsets per doubled rank sum.
        std::vector<std::size_t> doubled(n);
        for (std::size_t k = 0; k < n; ++k) { doubled[k] = static_cast<std::size_t>(std::lround(2 * ranks[k])); }
        const auto max_sum = std::accumulate(doubled.begin(), doubled.end(), std::size_t{0});
        std::vector<std::uint64_t> count(max_sum + 1, 0);
        count[0] = 1;
        std::size_t reach = 0;
        for (auto r : doubled) {
            reach += r;
            for (std::size_t s = reach; s >= r; --s) { count[s] += count[s - r]; }
        }
        const auto observed = static_cast<std::size_t>(std::lround(2 * statistic));
        std::uint64_t tail = 0;
        for (std::size_t s = 0; s <= observed; ++s) { tail += count[s]; }
        const double p = 2.0 * static_cast<double>(tail) / std::ldexp(1.0, static_cast<int>(n));
        return {statistic, w_plus, std::min(1.0, p), n, true, false};
    }

    // Normal approximation
    const double nd = static_cast<double>(n);
    double tie_term = 0;
    {
        std::vector<double> sorted = ranks;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t start = 0; start < n;) {
            std::size_t end = start + 1;
            while (end < n && sorted[end] == sorted[start]) { ++end; }
            const double t = static_cast<double>(end - start);
            tie_term += t * t * t - t;
            start = end;
        }
    }
    const double mean = nd * (nd + 1) / 4.0;
    const double sigma = std::sqrt(nd * (nd + 1) * (2 * nd + 1) / 24.0 - tie_term / 48.0);
    const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / sigma;
    const double p = std::erfc(z / std::sqrt(2.0));
    return {statistic, w_plus, std::min(1.0, p), n, false, false};
}

std::vector<double> holm_adjust(std::span<const double> pvalues) {
    const auto m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return pvalues[x] < pvalues[y]; });
    std::vector<double> adjusted(m);
    double running = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double v = std::min(1.0, static_cast<double>(m - k) * pvalues[order[k]]);
        running = std::max(running, v);
        adjusted[order[k]] = running;
    }
    return adjusted;
}

std::size_t AccuracyMatrix::column_index(std::string_view classifier) const {
    const auto it = std::find(classifiers.begin(), classifiers.end(), classifier);
    if (it == classifiers.end()) { throw std::invalid_argument("unknown classifier " + std::string(classifier)); }
    return static_cast<std::size_t>(it - classifiers.begin());
}

std::vector<double> AccuracyMatrix::column(std::string_view classifier) const {
    const auto c = column_index(classifier);
    std::vector<double> out;
    out.reserve(cells.size());
    for (const auto& row : cells) { out.push_back(row[c]); }
    return out;
}

bool AccuracyMatrix::row_complete(std::size_t row) const {
    return std::none_of(cells[row].begin(), cells[row].end(), [](double v) { return std::isnan(v); });
}

AccuracyMatrix AccuracyMatrix::complete_rows() const {
    AccuracyMatrix out{{}, classifiers, {}};
    for (std::size_t r = 0; r < cells.size(); ++r) {
        if (row_complete(r)) {
            out.datasets.push_back(datasets[r]);
            out.cells.push_back(cells[r]);
        }
    }
    return out;
}

std::vector<MeanRank> mean_ranks(const AccuracyMatrix& m) {
    if (m.cells.empty() || m.classifiers.empty()) { throw std::invalid_argument("mean_ranks: empty matrix"); }
    const auto c = m.classifiers.size();
    std::vector<double> sums(c, 0);
    for (std::size_t r = 0; r < m.cells.size(); ++r) {
        if (!m.row_complete(r)) { throw std::invalid_argument("mean_ranks: missing cell for " + m.datasets[r]); }
        // Rank by descending accuracy: ascending ranks of the negated row
        std::vector<double> negated(c);
        std::transform(m.cells[r].begin(), m.cells[r].end(), negated.begin(), [](double v) { return -v; });
        const auto ranks = average_ranks(negated);
        for (std::size_t k = 0; k < c; ++k) { sums[k] += ranks[k]; }
    }
    std::vector<MeanRank> out;
    for (std::size_t k = 0; k < c; ++k) {
        out.push_back({m.classifiers[k], sums[k] / static_cast<double>(m.cells.size())});
    }
    return out;
}

std::vector<double> best_alternative(const AccuracyMatrix& m, std::string_view target) {
    const auto t = m.column_index(target);
    if (m.classifiers.size() < 2) { throw std::invalid_argument("best_alternative: no alternative classifier"); }
    std::vector<double> out;
    out.reserve(m.cells.size());
    for (const auto& row : m.cells) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k != t) { best = std::max(best, row[k]); }
        }
        out.push_back(best);
    }
    return out;
}

WinTieLoss win_tie_loss(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) { throw std::invalid_argument("win_tie_loss: samples of different sizes"); }
    WinTieLoss out;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) {
            ++out.wins;
        } else if (a[k] < b[k]) {
            ++out.losses;
        } else {
            ++out.ties;
        }
    }
    return out;
}

} // namespace elastic
