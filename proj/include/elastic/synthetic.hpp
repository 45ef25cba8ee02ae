#pragma once

#include <elastic/ucr.hpp>

#include <cstdint>
#include <vector>

namespace elastic::synthetic {

/** Small generated datasets in the shape of UCR datasets, for running the benchmark without the archive.
 *  Every generator is deterministic given its seed, on every platform.
 */

/// Baseline of 1s with one (class "1") or two (class "2") dips to -1 at random positions.
/// Alignment by warping preserves the class; lock-step comparison does not.
[[nodiscard]] DatasetPair motif_shift(std::uint64_t seed, std::size_t train_per_class = 10,
                                      std::size_t test_per_class = 20, std::size_t length = 24);

/// Cylinder-Bell-Funnel, three classes.
[[nodiscard]] DatasetPair cbf(std::uint64_t seed, std::size_t train_per_class = 8, std::size_t test_per_class = 15,
                              std::size_t length = 64);

/// Noisy sines of 2 or 3 periods with a random phase.
[[nodiscard]] DatasetPair sine_frequency(std::uint64_t seed, std::size_t train_per_class = 10,
                                         std::size_t test_per_class = 20, std::size_t length = 48);

/// Rising vs falling noisy ramps with a random level offset.
[[nodiscard]] DatasetPair trend(std::uint64_t seed, std::size_t train_per_class = 10, std::size_t test_per_class = 20,
                                std::size_t length = 40);

/// Narrow vs wide gaussian bump at a random position.
[[nodiscard]] DatasetPair bump_width(std::uint64_t seed, std::size_t train_per_class = 10,
                                     std::size_t test_per_class = 20, std::size_t length = 40);

/// Series of different lengths: not admissible.
[[nodiscard]] DatasetPair ragged(std::uint64_t seed);

/// A class with a single training exemplar: not admissible.
[[nodiscard]] DatasetPair singleton_class(std::uint64_t seed);

/// The five admissible datasets above, in a fixed order.
[[nodiscard]] std::vector<DatasetPair> admissible_suite(std::uint64_t seed);

/// admissible_suite followed by ragged and singleton_class.
[[nodiscard]] std::vector<DatasetPair> full_suite(std::uint64_t seed);

} // namespace elastic::synthetic
