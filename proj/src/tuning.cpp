#include <elastic/format.hpp>
#include <elastic/nn.hpp>
#include <elastic/parallel.hpp>
#include <elastic/tuning.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace elastic {

namespace {

/// Unbiased draw in [0, n). std::uniform_int_distribution is implementation defined; this is not.
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % range);
    std::uint64_t x = 0;
    do { x = rng(); } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

} // namespace

void TuningConfig::validate() const {
    if (!(exponent > 0) || !std::isfinite(exponent)) { throw std::invalid_argument("exponent must be > 0"); }
    if (candidate_count && *candidate_count == 0) { throw std::invalid_argument("candidate count must be >= 1"); }
    if (pair_sample_size == 0) { throw std::invalid_argument("pair sample size must be >= 1"); }
}

std::vector<std::size_t> cdtw_window_candidates(std::size_t len, std::size_t count) {
    if (count == 0) { throw std::invalid_argument("candidate count must be >= 1"); }
    if (count == 1) { return {0}; }
    std::vector<std::size_t> out;
    // floor(k/(count-1) * len) in exact integer arithmetic
    for (std::size_t k = 0; k < count; ++k) {
        const auto w = (k * len) / (count - 1);
        if (out.empty() || out.back() != w) { out.push_back(w); }
    }
    return out;
}

std::vector<double> wdtw_g_candidates(std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 1; k <= count; ++k) { out[k - 1] = static_cast<double>(k) / static_cast<double>(count); }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> draw_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (n < 2) { throw DataError("at least 2 series are required to draw pairs"); }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t total = n * (n - 1) / 2;
    if (total <= count) {
        out.reserve(total);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) { out.emplace_back(i, j); }
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto i = bounded(rng, n);
        auto j = bounded(rng, n - 1);
        if (j >= i) { ++j; }
        out.emplace_back(i, j);
    }
    return out;
}

double sample_omega_prime(const LabeledDataset& train, const TuningConfig& cfg) {
    if (train.size() < 2) { throw DataError("omega' estimation requires at least 2 training series"); }
    const auto pairs = draw_pairs(train.size(), cfg.pair_sample_size, cfg.rng_seed);
    double sum = 0;
    for (const auto& [i, j] : pairs) { sum += sqed(train[i].series, train[j].series); }
    return sum / static_cast<double>(pairs.size());
}

std::vector<double> adtw_penalty_candidates(double omega_prime, const TuningConfig& cfg) {
    cfg.validate();
    if (!(omega_prime >= 0)) { throw std::invalid_argument("omega' must be >= 0"); }
    const auto count = cfg.candidate_count.value_or(DEFAULT_CANDIDATES);
    std::vector<double> out(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double r = std::pow(static_cast<double>(i) / static_cast<double>(count), cfg.exponent);
        out[i - 1] = omega_prime * r;
    }
    return out;
}

std::size_t select_candidate(std::span<const double> scores, TieBreak rule) {
    if (scores.empty()) { throw std::invalid_argument("select_candidate: no candidate"); }
    const double best = *std::max_element(scores.begin(), scores.end());
    std::vector<std::size_t> tied;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] == best) { tied.push_back(k); }
    }
    switch (rule) {
        case TieBreak::smallest: return tied.front();
        case TieBreak::lower_median: return tied[(tied.size() - 1) / 2];
    }
    return tied.front();
}

TuningResult tune(Family family, const LabeledDataset& train, const TuningConfig& cfg) {
    cfg.validate();
    if (!is_parameterized(family)) {
        throw std::invalid_argument(std::string("tune: ") + to_string(family) + " has no parameter");
    }
    if (train.size() < 2) { throw DataError("tuning requires at least 2 training items"); }

    std::vector<DistanceSpec> specs;
    std::optional<double> omega_prime;
    switch (family) {
        case Family::cdtw:
            for (auto w : cdtw_window_candidates(train.length(), cfg.candidate_count.value_or(DEFAULT_CDTW_CANDIDATES))) {
                specs.push_back(DistanceSpec::cdtw(w));
            }
            break;
        case Family::wdtw:
            for (auto g : wdtw_g_candidates(cfg.candidate_count.value_or(DEFAULT_CANDIDATES))) {
                specs.push_back(DistanceSpec::wdtw(g));
            }
            break;
        case Family::adtw:
            omega_prime = sample_omega_prime(train, cfg);
            for (auto omega : adtw_penalty_candidates(*omega_prime, cfg)) { specs.push_back(DistanceSpec::adtw(omega)); }
            break;
        default: break;
    }

    std::vector<double> accuracy(specs.size());
    parallel_for(specs.size(), cfg.jobs, [&](std::size_t k) { accuracy[k] = loocv_accuracy(train, specs[k]); });

    const auto best = select_candidate(accuracy, family == Family::adtw ? TieBreak::lower_median : TieBreak::smallest);
    TuningResult result{specs[best], best, {}, omega_prime, cfg.exponent, cfg.rng_seed};
    result.scores.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) { result.scores.push_back({specs[k].param(), accuracy[k]}); }
    return result;
}

void write_csv(std::ostream& os, const TuningResult& result) {
    os << "# family=" << to_string(result.chosen.family()) << ",chosen=" << format_double(result.chosen.param())
       << ",omega_prime=" << (result.omega_prime ? format_double(*result.omega_prime) : std::string("none"))
       << ",seed=" << result.seed << ",exponent=" << format_double(result.exponent) << '\n';
    os << "param,accuracy\n";
    for (const auto& s : result.scores) { os << format_double(s.param) << ',' << format_double(s.accuracy) << '\n'; }
}

} // namespace elastic
