#include "oracle.hpp"

#include <elastic/distances.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

using namespace elastic;

namespace {

const TimeSeries S{1, 1, -1, 1, 1, 1};
const TimeSeries T{1, 1, 1, -1, 1, 1};
const TimeSeries U{1, 1, 1, 1, -1, 1};

std::size_t off_diagonal_steps(const WarpingPath& p) {
    std::size_t count = 0;
    for (std::size_t k = 1; k < p.size(); ++k) {
        if (!(p[k].i == p[k - 1].i + 1 && p[k].j == p[k - 1].j + 1)) { ++count; }
    }
    return count;
}

} // namespace

TEST(DistanceSpec, Validation) {
    EXPECT_THROW((void)DistanceSpec::wdtw(0), std::invalid_argument);
    EXPECT_THROW((void)DistanceSpec::wdtw(-1), std::invalid_argument);
    EXPECT_THROW((void)DistanceSpec::adtw(-0.1), std::invalid_argument);
    EXPECT_THROW((void)DistanceSpec::adtw(std::nan("")), std::invalid_argument);
    EXPECT_THROW((void)DistanceSpec::make(Family::cdtw, 1.5), std::invalid_argument);
    EXPECT_THROW((void)DistanceSpec::make(Family::cdtw, -1), std::invalid_argument);
    EXPECT_EQ(DistanceSpec::make(Family::cdtw, 3).window(), 3u);
    EXPECT_EQ(DistanceSpec::adtw(0.5).to_string(), "ADTW(omega=0.5)");
    EXPECT_EQ(DistanceSpec::cdtw(2).to_string(), "CDTW(w=2)");
    EXPECT_EQ(parse_family("AdTw"), Family::adtw);
    EXPECT_EQ(parse_family("foo"), std::nullopt);
}

TEST(Sqed, Examples) {
    EXPECT_EQ(sqed(S, T), 8);
    EXPECT_EQ(sqed(S, U), 8);
    EXPECT_EQ(sqed(S, S), 0);
    EXPECT_THROW((void)sqed(S, TimeSeries{1, 2}), LengthMismatch);
}

TEST(Dtw, MotifExamples) {
    EXPECT_EQ(dtw(S, S), 0);
    EXPECT_EQ(dtw(S, T), 0);
    EXPECT_EQ(dtw(S, U), 0);
}

TEST(Cdtw, MotifExamples) {
    EXPECT_EQ(cdtw(S, U, 1), 8);
    EXPECT_EQ(cdtw(S, S, 1), 0);
    EXPECT_EQ(cdtw(S, T, 1), 0);
    for (std::size_t w = 2; w < 6; ++w) { EXPECT_EQ(cdtw(S, U, w), 0); }
    EXPECT_EQ(cdtw(S, T, 0), sqed(S, T));
}

TEST(Cdtw, UndefinedWindow) {
    const TimeSeries shorter{1, 2, 3};
    EXPECT_THROW((void)cdtw(S, shorter, 2), UndefinedWindow);
    EXPECT_NO_THROW((void)cdtw(S, shorter, 3));
    EXPECT_THROW((void)distance_ea(DistanceSpec::cdtw(0), S, shorter, 10), UndefinedWindow);
}

TEST(Wdtw, MotifExamples) {
    EXPECT_EQ(wdtw(S, S, 0.1), 0);
    EXPECT_EQ(wdtw(S, T, 0.1), 0);
    EXPECT_EQ(wdtw(S, U, 0.1), 0);
}

TEST(WeightVector, Values) {
    const auto w = weight_vector(0.1, 6);
    ASSERT_EQ(w.size(), 6u);
    EXPECT_NEAR(w[0], 1.0 / (1.0 + std::exp(0.3)), 1e-15);
    EXPECT_NEAR(w[0], 0.425557, 1e-6);
    EXPECT_EQ(w[3], 0.5);
    for (double g : {0.01, 0.3, 1.0, 5.0}) {
        const auto v = weight_vector(g, 20);
        EXPECT_EQ(v[10], 0.5);
        for (std::size_t d = 1; d < v.size(); ++d) { EXPECT_LE(v[d - 1], v[d]); }
    }
}

TEST(WeightVector, CacheReturnsSameEntry) {
    const auto a = cached_weight_vector(0.25, 17);
    const auto b = cached_weight_vector(0.25, 17);
    EXPECT_EQ(a.get(), b.get());
    EXPECT_EQ(*a, weight_vector(0.25, 17));

    std::vector<const std::vector<double>*> seen(8);
    {
        std::vector<std::jthread> threads;
        for (std::size_t k = 0; k < seen.size(); ++k) {
            threads.emplace_back([&seen, k] { seen[k] = cached_weight_vector(0.77, 33).get(); });
        }
    }
    for (auto* p : seen) { EXPECT_EQ(p, seen.front()); }
}

TEST(Adtw, MotifExamples) {
    EXPECT_EQ(adtw(S, T, 3), 6);
    EXPECT_EQ(adtw(S, U, 3), 8);
    EXPECT_EQ(adtw(S, U, 1), 4);
    for (double omega : {0.5, 1.0, 2.0, 3.0, 3.9}) {
        EXPECT_EQ(adtw(S, S, omega), 0);
        EXPECT_EQ(adtw(S, T, omega), 2 * omega);
        EXPECT_EQ(adtw(S, U, omega), std::min(4 * omega, 8.0));
    }
    for (double omega : {4.0, 10.0}) {
        EXPECT_EQ(adtw(S, T, omega), 8);
        EXPECT_EQ(adtw(S, U, omega), 8);
    }
    EXPECT_EQ(adtw(S, U, 0), 0);
}

TEST(Adtw, InfinitePenaltyIsSqed) {
    EXPECT_EQ(adtw(S, U, POSITIVE_INFINITY), sqed(S, U));
    EXPECT_EQ(adtw(S, TimeSeries{1, 2}, POSITIVE_INFINITY), POSITIVE_INFINITY);
}

TEST(Distance, DispatchMatchesKernels) {
    EXPECT_EQ(distance(DistanceSpec::dtw(), S, T), dtw(S, T));
    oracle::Generator gen(11);
    for (int k = 0; k < 100; ++k) {
        const auto a = gen.series(10);
        const auto b = gen.series(10);
        EXPECT_EQ(distance(DistanceSpec::adtw(0), a, b), dtw(a, b));
        EXPECT_EQ(distance(DistanceSpec::cdtw(0), a, b), sqed(a, b));
        EXPECT_EQ(distance(DistanceSpec::sqed(), a, b), sqed(a, b));
        EXPECT_EQ(distance(DistanceSpec::wdtw(0.2), a, b), wdtw(a, b, 0.2));
        EXPECT_EQ(distance(DistanceSpec::cdtw(3), a, b), cdtw(a, b, 3));
    }
}

TEST(Distance, RollingMatchesFullMatrixBitForBit) {
    oracle::Generator gen(12);
    for (int k = 0; k < 300; ++k) {
        const auto a = gen.series(gen.integer(1, 30));
        const auto b = gen.series(gen.integer(1, 30));
        const auto lendiff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        const std::vector<DistanceSpec> specs{DistanceSpec::dtw(), DistanceSpec::cdtw(lendiff + gen.integer(0, 5)),
                                              DistanceSpec::wdtw(gen.uniform(0.01, 1)),
                                              DistanceSpec::adtw(gen.uniform(0, 3))};
        for (const auto& spec : specs) { EXPECT_EQ(distance(spec, a, b), naive_distance(spec, a, b)) << spec.to_string(); }
    }
}

TEST(DistanceEa, CutoffEdgeCases) {
    EXPECT_THROW((void)distance_ea(DistanceSpec::dtw(), S, T, -1), std::invalid_argument);
    EXPECT_EQ(distance_ea(DistanceSpec::adtw(3), S, T, POSITIVE_INFINITY), distance(DistanceSpec::adtw(3), S, T));
    EXPECT_GT(distance_ea(DistanceSpec::adtw(3), S, T, 0), 0);
    EXPECT_GT(distance_ea(DistanceSpec::sqed(), S, T, 0), 0);
    // Cutoff equal to the distance keeps it
    EXPECT_EQ(distance_ea(DistanceSpec::adtw(3), S, T, 6), 6);
    EXPECT_GT(distance_ea(DistanceSpec::adtw(3), S, T, 5.999), 5.999);
    EXPECT_EQ(distance_ea(DistanceSpec::cdtw(1), S, U, 8), 8);
}

TEST(DistanceEa, AgreesWithNaive) {
    oracle::Generator gen(13);
    for (int k = 0; k < 2000; ++k) {
        const auto a = gen.series(gen.integer(1, 25));
        const auto b = gen.series(gen.integer(1, 25));
        const auto lendiff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        std::vector<DistanceSpec> specs{DistanceSpec::dtw(), DistanceSpec::cdtw(lendiff + gen.integer(0, 4)),
                                        DistanceSpec::wdtw(gen.uniform(0.01, 1)), DistanceSpec::adtw(gen.uniform(0, 5))};
        if (a.size() == b.size()) { specs.push_back(DistanceSpec::sqed()); }
        for (const auto& spec : specs) {
            const double naive = naive_distance(spec, a, b);
            const double cutoff = naive * gen.uniform(0, 2);
            const double ea = distance_ea(spec, a, b, cutoff);
            if (naive <= cutoff) {
                EXPECT_EQ(ea, naive) << spec.to_string();
            } else {
                EXPECT_GT(ea, cutoff) << spec.to_string();
            }
        }
    }
}

TEST(CostMatrix, BordersAndResult) {
    for (const auto& spec : {DistanceSpec::dtw(), DistanceSpec::cdtw(1), DistanceSpec::wdtw(0.1), DistanceSpec::adtw(3),
                             DistanceSpec::sqed()}) {
        const auto m = cost_matrix(spec, S, U);
        ASSERT_EQ(m.rows(), 7u);
        ASSERT_EQ(m.cols(), 7u);
        EXPECT_EQ(m(0, 0), 0);
        for (std::size_t i = 1; i < 7; ++i) {
            EXPECT_EQ(m(i, 0), POSITIVE_INFINITY);
            EXPECT_EQ(m(0, i), POSITIVE_INFINITY);
        }
        EXPECT_EQ(m.result(), distance(spec, S, U));
        for (std::size_t i = 1; i < 7; ++i) {
            for (std::size_t j = 1; j < 7; ++j) { EXPECT_GE(m(i, j), 0); }
        }
    }
    EXPECT_EQ(cost_matrix(DistanceSpec::adtw(3), S, U).result(), 8);
    const auto band = cost_matrix(DistanceSpec::cdtw(1), S, U);
    EXPECT_EQ(band(1, 3), POSITIVE_INFINITY);
    EXPECT_EQ(band(5, 2), POSITIVE_INFINITY);
}

TEST(CostMatrix, CsvExport) {
    std::ostringstream os;
    write_csv(os, cost_matrix(DistanceSpec::dtw(), TimeSeries{1, 2}, TimeSeries{1, 3}));
    EXPECT_EQ(os.str(), "0,inf,inf\ninf,0,4\ninf,1,1\n");
}

TEST(WarpingPath, SelfAlignmentIsDiagonal) {
    const auto r = warping_path(DistanceSpec::dtw(), S, S);
    EXPECT_EQ(r.distance, 0);
    ASSERT_EQ(r.path.size(), S.size());
    for (std::size_t k = 0; k < r.path.size(); ++k) { EXPECT_EQ(r.path[k], (Step{k + 1, k + 1})); }
}

TEST(WarpingPath, AmercedMotif) {
    const auto r = warping_path(DistanceSpec::adtw(3), S, T);
    EXPECT_EQ(r.distance, 6);
    EXPECT_TRUE(validate_path(r.path, 6, 6));
    EXPECT_EQ(off_diagonal_steps(r.path), 2u);
    EXPECT_EQ(path_cost(DistanceSpec::adtw(3), S, T, r.path), 6);
}

TEST(WarpingPath, TieBreakPrefersDiagonalThenLeft) {
    // Constant series: every path of the same shape costs the same under DTW
    const TimeSeries a{0, 0, 0};
    const TimeSeries b{0, 0, 0, 0};
    const auto r = warping_path(DistanceSpec::dtw(), a, b);
    const WarpingPath expected{{1, 1}, {1, 2}, {2, 3}, {3, 4}};
    EXPECT_EQ(r.path, expected);
}

TEST(WarpingPath, ReproducesDistanceAndMatchesOracle) {
    oracle::Generator gen(21);
    for (int k = 0; k < 300; ++k) {
        const auto a = gen.series(gen.integer(1, 7));
        const auto b = gen.series(gen.integer(1, 7));
        const auto lendiff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        const auto w = lendiff + gen.integer(0, 2);
        const double g = gen.uniform(0.01, 1);
        const double omega = gen.uniform(0, 10);
        const std::vector<std::pair<DistanceSpec, std::function<double(const oracle::Path&)>>> cases{
            {DistanceSpec::dtw(), [&](const auto& p) { return oracle::dtw_cost(a, b, p); }},
            {DistanceSpec::cdtw(w), [&](const auto& p) { return oracle::cdtw_cost(a, b, p, w); }},
            {DistanceSpec::wdtw(g), [&](const auto& p) { return oracle::wdtw_cost(a, b, p, g); }},
            {DistanceSpec::adtw(omega), [&](const auto& p) { return oracle::adtw_cost(a, b, p, omega); }},
        };
        for (const auto& [spec, cost] : cases) {
            const auto r = warping_path(spec, a, b);
            ASSERT_TRUE(validate_path(r.path, a.size(), b.size()));
            EXPECT_EQ(path_cost(spec, a, b, r.path), r.distance) << spec.to_string();
            EXPECT_EQ(r.distance, distance(spec, a, b));
            EXPECT_TRUE(oracle::close(r.distance, oracle::minimum(a, b, cost), 1e-9)) << spec.to_string();
        }
    }
}

TEST(PathCost, RejectsInvalidAndOutOfBand) {
    EXPECT_THROW((void)path_cost(DistanceSpec::dtw(), S, T, WarpingPath{{1, 1}}), std::invalid_argument);
    WarpingPath wide{{1, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 6}, {6, 6}};
    EXPECT_EQ(path_cost(DistanceSpec::cdtw(1), S, T, wide), POSITIVE_INFINITY);
    EXPECT_TRUE(std::isfinite(path_cost(DistanceSpec::cdtw(2), S, T, wide)));
}
