#pragma once

#include <elastic/distances.hpp>
#include <elastic/series.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace elastic {

struct TuningConfig {
    /// Exponent e of the ADTW ratio ladder r_i = (i/count)^e.
    double exponent{5};
    /// Grid resolution. Unset: 101 windows for CDTW, 100 values for WDTW and ADTW.
    std::optional<std::size_t> candidate_count;
    /// Number of random pairs averaged for omega'. When the dataset has fewer pairs, all pairs are used.
    std::size_t pair_sample_size{4000};
    std::uint64_t rng_seed{0};
    /// Worker threads evaluating candidates. Does not affect results.
    unsigned jobs{1};

    /// Throws std::invalid_argument on e <= 0, a zero count or sample size.
    void validate() const;
};

inline constexpr std::size_t DEFAULT_CDTW_CANDIDATES = 101;
inline constexpr std::size_t DEFAULT_CANDIDATES = 100;

/// Windows floor(f * len) for the fractions f = k/(count-1), k = 0..count-1; ascending, without duplicates.
[[nodiscard]] std::vector<std::size_t> cdtw_window_candidates(std::size_t len,
                                                              std::size_t count = DEFAULT_CDTW_CANDIDATES);

/// k/count for k = 1..count, i.e. 0.01, 0.02, ..., 1.00 by default.
[[nodiscard]] std::vector<double> wdtw_g_candidates(std::size_t count = DEFAULT_CANDIDATES);

/** Index pairs (i, j), i != j, used to estimate omega'.
 *  If n(n-1)/2 <= count, every unordered pair once, in lexicographic order.
 *  Otherwise `count` pairs drawn uniformly with replacement from a mt19937_64 seeded with `seed`.
 */
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> draw_pairs(std::size_t n, std::size_t count,
                                                                          std::uint64_t seed);

/// Mean SQED over draw_pairs(train.size(), cfg.pair_sample_size, cfg.rng_seed). Needs >= 2 series.
[[nodiscard]] double sample_omega_prime(const LabeledDataset& train, const TuningConfig& cfg);

/// omega' * (i/count)^e for i = 1..count.
[[nodiscard]] std::vector<double> adtw_penalty_candidates(double omega_prime, const TuningConfig& cfg);

enum class TieBreak {
    smallest,       // first best candidate
    lower_median,   // median of the best candidates, lower middle one for an even count
};

/// Index of the best score according to `rule`. `scores` must not be empty.
[[nodiscard]] std::size_t select_candidate(std::span<const double> scores, TieBreak rule);

struct CandidateScore {
    double param;
    double accuracy;
};

struct TuningResult {
    DistanceSpec chosen;
    std::size_t chosen_index;
    std::vector<CandidateScore> scores;
    std::optional<double> omega_prime;   // ADTW only
    double exponent;
    std::uint64_t seed;
};

/** Leave-one-out NN1 grid search on the training split.
 *  CDTW and WDTW keep the smallest best parameter, ADTW the median of the best ones.
 *  Throws std::invalid_argument for a family without parameter.
 */
[[nodiscard]] TuningResult tune(Family family, const LabeledDataset& train, const TuningConfig& cfg);

/** Comment header "# family=...,chosen=...,omega_prime=...,seed=...,exponent=...", then "param,accuracy"
 *  and one row per candidate.
 */
void write_csv(std::ostream& os, const TuningResult& result);

} // namespace elastic
