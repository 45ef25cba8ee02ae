#include <elastic/synthetic.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace elastic::synthetic {

namespace {

/// Portable random source: mt19937_64 output is fully specified, the std distributions are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t lo, std::size_t hi) {   // in [lo, hi]
        return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
    }
    /// Box-Muller
    double normal(double mean = 0, double sd = 1) {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

using Generator = std::function<std::vector<double>(Rng&, const std::string& label)>;

LabeledDataset make_split(const std::string& name, Split split, Rng& rng, const std::vector<std::string>& labels,
                          std::size_t per_class, const Generator& gen) {
    LabeledDataset ds{name, split, {}, false};
    // Interleave classes so that datasets are not sorted by label
    for (std::size_t k = 0; k < per_class; ++k) {
        for (const auto& label : labels) { ds.items.push_back({TimeSeries(gen(rng, label)), label}); }
    }
    return ds;
}

DatasetPair make_pair(const std::string& name, std::uint64_t seed, const std::vector<std::string>& labels,
                      std::size_t train_per_class, std::size_t test_per_class, const Generator& gen) {
    Rng rng(seed);
    auto train = make_split(name, Split::train, rng, labels, train_per_class, gen);
    auto test = make_split(name, Split::test, rng, labels, test_per_class, gen);
    return {name, std::move(train), std::move(test)};
}

} // namespace

DatasetPair motif_shift(std::uint64_t seed, std::size_t train_per_class, std::size_t test_per_class,
                        std::size_t length) {
    return make_pair("MotifShift", seed, {"1", "2"}, train_per_class, test_per_class,
                     [length](Rng& rng, const std::string& label) {
                         std::vector<double> v(length);
                         for (auto& x : v) { x = 1 + rng.normal(0, 0.05); }
                         const std::size_t gap = length / 5;
                         if (label == "1") {
                             v[rng.index(length / 6, length - 1 - length / 6)] -= 2;
                         } else {
                             const auto p = rng.index(length / 8, length - 1 - gap - length / 8);
                             v[p] -= 2;
                             v[p + gap] -= 2;
                         }
                         return v;
                     });
}

DatasetPair cbf(std::uint64_t seed, std::size_t train_per_class, std::size_t test_per_class, std::size_t length) {
    return make_pair("CBF", seed, {"1", "2", "3"}, train_per_class, test_per_class,
                     [length](Rng& rng, const std::string& label) {
                         const double scale = static_cast<double>(length) / 128.0;
                         const double a = rng.uniform(16, 32) * scale;
                         const double b = a + rng.uniform(32, 96) * scale;
                         const double amplitude = 6 + rng.normal();
                         std::vector<double> v(length);
                         for (std::size_t t = 0; t < length; ++t) {
                             const double td = static_cast<double>(t);
                             double shape = 0;
                             if (td >= a && td <= b) {
                                 if (label == "1") {
                                     shape = 1;
                                 } else if (label == "2") {
                                     shape = (td - a) / (b - a);
                                 } else {
                                     shape = (b - td) / (b - a);
                                 }
                             }
                             v[t] = amplitude * shape + rng.normal();
                         }
                         return v;
                     });
}

DatasetPair sine_frequency(std::uint64_t seed, std::size_t train_per_class, std::size_t test_per_class,
                           std::size_t length) {
    return make_pair("SineFrequency", seed, {"1", "2"}, train_per_class, test_per_class,
                     [length](Rng& rng, const std::string& label) {
                         const double periods = label == "1" ? 2 : 3;
                         const double phase = rng.uniform(0, 2 * std::numbers::pi);
                         std::vector<double> v(length);
                         for (std::size_t t = 0; t < length; ++t) {
                             const double x = 2 * std::numbers::pi * periods * static_cast<double>(t) /
                                              static_cast<double>(length);
                             v[t] = std::sin(x + phase) + rng.normal(0, 0.3);
                         }
                         return v;
                     });
}

DatasetPair trend(std::uint64_t seed, std::size_t train_per_class, std::size_t test_per_class, std::size_t length) {
    return make_pair("Trend", seed, {"up", "down"}, train_per_class, test_per_class,
                     [length](Rng& rng, const std::string& label) {
                         const double slope = (label == "up" ? 1 : -1) * rng.uniform(0.5, 1.5) /
                                              static_cast<double>(length);
                         const double offset = rng.normal(0, 0.5);
                         std::vector<double> v(length);
                         for (std::size_t t = 0; t < length; ++t) {
                             v[t] = offset + slope * static_cast<double>(t) + rng.normal(0, 0.4);
                         }
                         return v;
                     });
}

DatasetPair bump_width(std::uint64_t seed, std::size_t train_per_class, std::size_t test_per_class,
                       std::size_t length) {
    return make_pair("BumpWidth", seed, {"narrow", "wide"}, train_per_class, test_per_class,
                     [length](Rng& rng, const std::string& label) {
                         const double width = label == "narrow" ? 1.5 : 4.0;
                         const double lo = static_cast<double>(length) / 4;
                         const double center = rng.uniform(lo, 3 * lo);
                         std::vector<double> v(length);
                         for (std::size_t t = 0; t < length; ++t) {
                             const double z = (static_cast<double>(t) - center) / width;
                             v[t] = 2 * std::exp(-0.5 * z * z) + rng.normal(0, 0.15);
                         }
                         return v;
                     });
}

DatasetPair ragged(std::uint64_t seed) {
    Rng rng(seed);
    const auto gen = [&rng](const std::string& label) {
        std::vector<double> v(rng.index(12, 20));
        for (auto& x : v) { x = rng.normal(label == "1" ? 0 : 1, 0.5); }
        return v;
    };
    DatasetPair pair{"Ragged", {"Ragged", Split::train, {}, false}, {"Ragged", Split::test, {}, false}};
    for (int k = 0; k < 6; ++k) {
        const std::string label = k % 2 == 0 ? "1" : "2";
        pair.train.items.push_back({TimeSeries(gen(label)), label});
        pair.test.items.push_back({TimeSeries(gen(label)), label});
    }
    return pair;
}

DatasetPair singleton_class(std::uint64_t seed) {
    auto pair = trend(seed, 3, 3, 16);
    pair.name = pair.train.name = pair.test.name = "Singleton";
    // Relabel one training exemplar into its own class
    pair.train.items.front().label = "lonely";
    return pair;
}

std::vector<DatasetPair> admissible_suite(std::uint64_t seed) {
    return {bump_width(seed + 1), cbf(seed + 2), motif_shift(seed + 3), sine_frequency(seed + 4), trend(seed + 5)};
}

std::vector<DatasetPair> full_suite(std::uint64_t seed) {
    auto out = admissible_suite(seed);
    out.push_back(ragged(seed + 6));
    out.push_back(singleton_class(seed + 7));
    return out;
}

} // namespace elastic::synthetic
