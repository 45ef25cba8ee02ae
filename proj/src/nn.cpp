#include <elastic/format.hpp>
#include <elastic/nn.hpp>
#include <elastic/parallel.hpp>

#include <ostream>
#include <stdexcept>

namespace elastic {

Neighbour nn1(std::span<const LabeledSeries> train, const TimeSeries& query, const DistanceSpec& spec,
              std::optional<std::size_t> exclude) {
    std::optional<std::size_t> best;
    double best_distance = POSITIVE_INFINITY;
    for (std::size_t k = 0; k < train.size(); ++k) {
        if (exclude == k) { continue; }
        const double d = distance_ea(spec, query, train[k].series, best_distance);
        if (!best || d < best_distance) {
            best = k;
            best_distance = d;
        }
    }
    if (!best) { throw std::invalid_argument("nn1: empty training set"); }
    return {train[*best].label, *best, best_distance};
}

std::size_t loocv_correct(const LabeledDataset& train, const DistanceSpec& spec) {
    if (train.size() < 2) { throw DataError("LOOCV requires at least 2 training items"); }
    std::size_t correct = 0;
    for (std::size_t q = 0; q < train.size(); ++q) {
        if (nn1(train.items, train[q].series, spec, q).label == train[q].label) { ++correct; }
    }
    return correct;
}

double loocv_accuracy(const LabeledDataset& train, const DistanceSpec& spec) {
    return static_cast<double>(loocv_correct(train, spec)) / static_cast<double>(train.size());
}

ClassificationOutcome evaluate(const LabeledDataset& train, const LabeledDataset& test, const DistanceSpec& spec,
                               unsigned jobs) {
    if (test.empty()) { throw DataError("evaluate: empty test set"); }
    ClassificationOutcome out;
    const auto n = test.size();
    out.truth.resize(n);
    out.predictions.resize(n);
    out.nearest.resize(n);
    out.distances.resize(n);
    parallel_for(n, jobs, [&](std::size_t q) {
        const auto nn = nn1(train.items, test[q].series, spec);
        out.truth[q] = test[q].label;
        out.predictions[q] = nn.label;
        out.nearest[q] = nn.index;
        out.distances[q] = nn.distance;
    });
    for (std::size_t q = 0; q < n; ++q) {
        if (out.truth[q] == out.predictions[q]) { ++out.correct; }
    }
    out.accuracy = static_cast<double>(out.correct) / static_cast<double>(n);
    return out;
}

void write_csv(std::ostream& os, const ClassificationOutcome& outcome) {
    os << "index,true_label,predicted_label,nearest_index,distance\n";
    for (std::size_t q = 0; q < outcome.truth.size(); ++q) {
        os << q << ',' << outcome.truth[q] << ',' << outcome.predictions[q] << ',' << outcome.nearest[q] << ','
           << format_double(outcome.distances[q]) << '\n';
    }
}

} // namespace elastic
