#include <elastic/distances.hpp>
#include <elastic/format.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace elastic {

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// DistanceSpec
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::sqed: return "SQED";
        case Family::dtw: return "DTW";
        case Family::cdtw: return "CDTW";
        case Family::wdtw: return "WDTW";
        case Family::adtw: return "ADTW";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "sqed") { return Family::sqed; }
    if (lower == "dtw") { return Family::dtw; }
    if (lower == "cdtw") { return Family::cdtw; }
    if (lower == "wdtw") { return Family::wdtw; }
    if (lower == "adtw") { return Family::adtw; }
    return std::nullopt;
}

DistanceSpec DistanceSpec::cdtw(std::size_t window) { return {Family::cdtw, static_cast<double>(window)}; }

DistanceSpec DistanceSpec::wdtw(double g) {
    if (!(g > 0) || !std::isfinite(g)) { throw std::invalid_argument("WDTW weight factor g must be finite and > 0"); }
    return {Family::wdtw, g};
}

DistanceSpec DistanceSpec::adtw(double omega) {
    if (!(omega >= 0)) { throw std::invalid_argument("ADTW penalty omega must be >= 0"); }
    return {Family::adtw, omega};
}

DistanceSpec DistanceSpec::make(Family f, double param) {
    switch (f) {
        case Family::sqed: return sqed();
        case Family::dtw: return dtw();
        case Family::cdtw:
            if (!(param >= 0) || !std::isfinite(param) || std::floor(param) != param) {
                throw std::invalid_argument("CDTW window must be a nonnegative integer");
            }
            return cdtw(static_cast<std::size_t>(param));
        case Family::wdtw: return wdtw(param);
        case Family::adtw: return adtw(param);
    }
    throw std::invalid_argument("unknown distance family");
}

std::string DistanceSpec::to_string() const {
    const std::string name = elastic::to_string(family_);
    switch (family_) {
        case Family::cdtw: return name + "(w=" + std::to_string(window()) + ")";
        case Family::wdtw: return name + "(g=" + format_double(param_) + ")";
        case Family::adtw: return name + "(omega=" + format_double(param_) + ")";
        default: return name;
    }
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Weights
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

std::vector<double> weight_vector(double g, std::size_t len) {
    const double mid = static_cast<double>(len) / 2;
    std::vector<double> w(len);
    for (std::size_t d = 0; d < len; ++d) { w[d] = 1.0 / (1.0 + std::exp(-g * (static_cast<double>(d) - mid))); }
    return w;
}

std::shared_ptr<const std::vector<double>> cached_weight_vector(double g, std::size_t len) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const std::vector<double>>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{g, len}];
    if (!slot) { slot = std::make_shared<const std::vector<double>>(weight_vector(g, len)); }
    return slot;
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// DP core
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

namespace {

constexpr std::size_t NO_WINDOW = std::numeric_limits<std::size_t>::max();

/// Everything the DP needs: the two series, optional weights indexed by |i-j|, the additive penalty charged
/// to non diagonal steps, and the band half-width.
struct Problem {
    std::span<const double> lines;
    std::span<const double> cols;
    std::shared_ptr<const std::vector<double>> weights;
    double penalty{0};
    std::size_t window{NO_WINDOW};

    /// Cost of aligning lines[i] with cols[j], 1-based.
    [[nodiscard]] double cost(std::size_t i, std::size_t j) const noexcept {
        const double c = point_cost(lines[i - 1], cols[j - 1]);
        if (weights) { return c * (*weights)[i > j ? i - j : j - i]; }
        return c;
    }

    [[nodiscard]] std::size_t band_lo(std::size_t i) const noexcept {
        return (window == NO_WINDOW || i <= window + 1) ? 1 : i - window;
    }

    [[nodiscard]] std::size_t band_hi(std::size_t i) const noexcept {
        if (window == NO_WINDOW || window >= cols.size()) { return cols.size(); }
        return std::min(cols.size(), i + window);
    }

    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept {
        return window == NO_WINDOW || (i > j ? i - j : j - i) <= window;
    }
};

/// The single cell update shared by every evaluation strategy. With penalty 0 this is the DTW recurrence.
[[nodiscard]] inline double combine(double cost, double diag, double top, double left, double penalty) noexcept {
    return cost + std::min(diag, std::min(top, left) + penalty);
}

Problem make_problem(const DistanceSpec& spec, std::span<const double> lines, std::span<const double> cols) {
    Problem p{lines, cols, nullptr, 0, NO_WINDOW};
    const auto n = lines.size();
    const auto m = cols.size();
    switch (spec.family()) {
        case Family::sqed:
            if (n != m) { throw LengthMismatch(n, m); }
            p.window = 0;
            break;
        case Family::dtw: break;
        case Family::cdtw:
            if (spec.window() < (n > m ? n - m : m - n)) { throw UndefinedWindow(spec.window(), n, m); }
            p.window = spec.window();
            break;
        case Family::wdtw: p.weights = cached_weight_vector(spec.param(), std::max(n, m)); break;
        case Family::adtw: p.penalty = spec.param(); break;
    }
    return p;
}

/// Squared euclidean distance with early abandoning. Accumulates in the same order as the diagonal of the DP.
double sqed_ea(std::span<const double> a, std::span<const double> b, double cutoff) {
    if (a.size() != b.size()) { throw LengthMismatch(a.size(), b.size()); }
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc = point_cost(a[i], b[i]) + acc;
        if (acc > cutoff) { return POSITIVE_INFINITY; }
    }
    return acc;
}

/** Two rows DP with pruning.
 *  A cell is "live" if its cumulative cost is finite and <= cutoff. As costs are nonnegative, a dead cell can
 *  not lead to a final cost <= cutoff, and reads as +INF. Per row, we track the interval [live_lo, live_hi]
 *  holding the live cells of the previous row:
 *   - cells before live_lo have no live predecessor
 *   - after live_hi+1, only the left neighbour can be live: stop at the first dead cell
 *  If a row has no live cell, abandon.
 */
double rolling(const Problem& p, double cutoff) {
    const auto n = p.lines.size();
    const auto m = p.cols.size();
    std::vector<double> prev(m + 1, POSITIVE_INFINITY);
    std::vector<double> curr(m + 1, POSITIVE_INFINITY);
    prev[0] = 0;
    std::size_t live_lo = 0;
    std::size_t live_hi = 0;

    const auto is_live = [cutoff](double v) { return v <= cutoff && v < POSITIVE_INFINITY; };

    for (std::size_t i = 1; i <= n; ++i) {
        const auto read_prev = [&](std::size_t j) { return (j >= live_lo && j <= live_hi) ? prev[j] : POSITIVE_INFINITY; };
        std::size_t next_lo = 0;
        std::size_t next_hi = 0;
        bool any = false;
        double left = POSITIVE_INFINITY;
        const auto hi = p.band_hi(i);
        for (std::size_t j = std::max({p.band_lo(i), live_lo, std::size_t{1}}); j <= hi; ++j) {
            const double v = combine(p.cost(i, j), read_prev(j - 1), read_prev(j), left, p.penalty);
            if (is_live(v)) {
                curr[j] = v;
                left = v;
                if (!any) { next_lo = j; any = true; }
                next_hi = j;
            } else {
                curr[j] = POSITIVE_INFINITY;
                left = POSITIVE_INFINITY;
                // Nothing on the right has a live top or diagonal predecessor
                if (j > live_hi) { break; }
            }
        }
        if (!any) { return POSITIVE_INFINITY; }
        std::swap(prev, curr);
        live_lo = next_lo;
        live_hi = next_hi;
    }
    return live_hi == m ? prev[m] : POSITIVE_INFINITY;
}

CostMatrix full(const Problem& p) {
    const auto n = p.lines.size();
    const auto m = p.cols.size();
    CostMatrix mat(n + 1, m + 1);
    mat(0, 0) = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto hi = p.band_hi(i);
        for (std::size_t j = p.band_lo(i); j <= hi; ++j) {
            mat(i, j) = combine(p.cost(i, j), mat(i - 1, j - 1), mat(i - 1, j), mat(i, j - 1), p.penalty);
        }
    }
    return mat;
}

double evaluate(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t, double cutoff) {
    if (spec.family() == Family::sqed) { return sqed_ea(s.values(), t.values(), cutoff); }
    // The DP is symmetric under transposition: iterate over the longest series to keep rows short.
    const bool swap = s.size() < t.size();
    const auto p = make_problem(spec, swap ? t.values() : s.values(), swap ? s.values() : t.values());
    return rolling(p, cutoff);
}

} // namespace

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Public kernels
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

double sqed(const TimeSeries& s, const TimeSeries& t) { return sqed_ea(s.values(), t.values(), POSITIVE_INFINITY); }

double dtw(const TimeSeries& s, const TimeSeries& t) { return evaluate(DistanceSpec::dtw(), s, t, POSITIVE_INFINITY); }

double cdtw(const TimeSeries& s, const TimeSeries& t, std::size_t window) {
    return evaluate(DistanceSpec::cdtw(window), s, t, POSITIVE_INFINITY);
}

double wdtw(const TimeSeries& s, const TimeSeries& t, double g) {
    return evaluate(DistanceSpec::wdtw(g), s, t, POSITIVE_INFINITY);
}

double adtw(const TimeSeries& s, const TimeSeries& t, double omega) {
    return evaluate(DistanceSpec::adtw(omega), s, t, POSITIVE_INFINITY);
}

double distance(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t) {
    return evaluate(spec, s, t, POSITIVE_INFINITY);
}

double distance_ea(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t, double cutoff) {
    if (!(cutoff >= 0)) { throw std::invalid_argument("cutoff must be >= 0"); }
    return evaluate(spec, s, t, cutoff);
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Matrix and paths
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

CostMatrix cost_matrix(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t) {
    return full(make_problem(spec, s.values(), t.values()));
}

double naive_distance(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t) {
    return cost_matrix(spec, s, t).result();
}

PathResult warping_path(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t) {
    const auto p = make_problem(spec, s.values(), t.values());
    const auto mat = full(p);
    WarpingPath path;
    std::size_t i = s.size();
    std::size_t j = t.size();
    path.push_back({i, j});
    // A predecessor is accepted if recomputing the cell from it gives back the stored value bit for bit.
    // This keeps path_cost exact along the returned path.
    while (i != 1 || j != 1) {
        const double c = p.cost(i, j);
        const double target = mat(i, j);
        if (i > 1 && j > 1 && c + mat(i - 1, j - 1) == target) {
            --i;
            --j;
        } else if (j > 1 && c + (mat(i, j - 1) + p.penalty) == target) {
            --j;
        } else if (i > 1 && c + (mat(i - 1, j) + p.penalty) == target) {
            --i;
        } else {
            throw std::logic_error("warping_path: backtracking failed");
        }
        path.push_back({i, j});
    }
    std::reverse(path.begin(), path.end());
    return {std::move(path), mat.result()};
}

double path_cost(const DistanceSpec& spec, const TimeSeries& s, const TimeSeries& t, std::span<const Step> path) {
    if (!validate_path(path, s.size(), t.size())) { throw std::invalid_argument("path_cost: invalid warping path"); }
    const auto p = make_problem(spec, s.values(), t.values());
    double acc = 0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const auto [i, j] = path[k];
        if (!p.in_band(i, j)) { return POSITIVE_INFINITY; }
        const bool diagonal = k == 0 || (i == path[k - 1].i + 1 && j == path[k - 1].j + 1);
        acc = p.cost(i, j) + (diagonal ? acc : acc + p.penalty);
    }
    return acc;
}

void write_csv(std::ostream& os, const CostMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) { os << ','; }
            os << format_double(m(i, j));
        }
        os << '\n';
    }
}

void write_csv(std::ostream& os, std::span<const Step> path) {
    os << "i,j\n";
    for (const auto& st : path) { os << st.i << ',' << st.j << '\n'; }
}

} // namespace elastic
