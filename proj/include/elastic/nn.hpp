#pragma once

#include <elastic/distances.hpp>
#include <elastic/series.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace elastic {

struct Neighbour {
    std::string label;
    std::size_t index;   // position in the training set
    double distance;
};

/** Nearest neighbour of `query` among `train`, skipping `exclude` if set.
 *  Candidates are scanned in order with the best distance so far as cutoff; ties keep the lowest index.
 */
[[nodiscard]] Neighbour nn1(std::span<const LabeledSeries> train, const TimeSeries& query, const DistanceSpec& spec,
                            std::optional<std::size_t> exclude = std::nullopt);

[[nodiscard]] inline Neighbour nn1(const LabeledDataset& train, const TimeSeries& query, const DistanceSpec& spec) {
    return nn1(train.items, query, spec);
}

/// Number of training items correctly classified by their nearest neighbour among the other items.
[[nodiscard]] std::size_t loocv_correct(const LabeledDataset& train, const DistanceSpec& spec);

/// loocv_correct / size. Requires at least 2 items.
[[nodiscard]] double loocv_accuracy(const LabeledDataset& train, const DistanceSpec& spec);

struct ClassificationOutcome {
    std::vector<std::string> truth;
    std::vector<std::string> predictions;
    std::vector<std::size_t> nearest;
    std::vector<double> distances;
    std::size_t correct{0};
    double accuracy{0};
};

/// Classify every test item against the whole training set.
[[nodiscard]] ClassificationOutcome evaluate(const LabeledDataset& train, const LabeledDataset& test,
                                             const DistanceSpec& spec, unsigned jobs = 1);

/// "index,true_label,predicted_label,nearest_index,distance", one row per query.
void write_csv(std::ostream& os, const ClassificationOutcome& outcome);

} // namespace elastic
