#include "bicut/separation.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "bicut/io.hpp"
#include "test_support.hpp"

namespace bicut {
namespace {

using testing::TestRng;

FractionalPoint random_point(TestRng& rng, int u, int v) {
    FractionalPoint point(u, v);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j) point.set(i, j, rng.unit());
    return point;
}

TEST(Separation, RealizedP4HasViolationOne) {
    // y_il = y_kj = y_kl = 1, y_ij = 0 with (i, j) = (0, 1), k = 1, l = 0.
    FractionalPoint point(2, 2);
    point.set(0, 0, 1.0);
    point.set(1, 0, 1.0);
    point.set(1, 1, 1.0);
    for (auto separate : {separate_dp, separate_exhaustive}) {
        auto cuts = separate(point);
        ASSERT_EQ(cuts.size(), 1u);
        EXPECT_EQ(cuts[0].i, 0);
        EXPECT_EQ(cuts[0].j, 1);
        EXPECT_EQ(cuts[0].k, 1);
        EXPECT_EQ(cuts[0].l, 0);
        EXPECT_NEAR(cuts[0].violation, 1.0, 1e-12);
    }
}

TEST(Separation, BiclusterIndicatorYieldsNothing) {
    BipartiteInstance instance(3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}});
    ASSERT_TRUE(is_bicluster_graph(instance));
    FractionalPoint point = FractionalPoint::indicator(instance);
    EXPECT_TRUE(separate_dp(point).empty());
    EXPECT_TRUE(separate_exhaustive(point).empty());
}

TEST(Separation, FractionalTwoByTwoExample) {
    FractionalPoint point(2, 2);
    point.set(0, 0, 0.9);
    point.set(0, 1, 0.9);
    point.set(1, 0, 0.9);
    point.set(1, 1, 0.0);
    for (auto separate : {separate_dp, separate_exhaustive}) {
        auto cuts = separate(point);
        ASSERT_EQ(cuts.size(), 1u);
        EXPECT_EQ(cuts[0].i, 1);
        EXPECT_EQ(cuts[0].j, 1);
        EXPECT_NEAR(cuts[0].violation, 0.7, 1e-12);
    }
}

TEST(Separation, AllZerosYieldsNothing) {
    FractionalPoint zeros(4, 4);
    EXPECT_TRUE(separate_dp(zeros).empty());
    EXPECT_TRUE(separate_exhaustive(zeros).empty());
}

TEST(Separation, DegenerateDimensionsYieldNothing) {
    FractionalPoint narrow(1, 5, 1.0);
    EXPECT_TRUE(separate_dp(narrow).empty());
    FractionalPoint flat(5, 1, 1.0);
    EXPECT_TRUE(separate_exhaustive(flat).empty());
}

TEST(Separation, DpMatchesExhaustiveOnRandomPoints) {
    TestRng rng(5150);
    for (int trial = 0; trial < 1000; ++trial) {
        int u = 2 + rng.below(11), v = 2 + rng.below(11);
        FractionalPoint point = random_point(rng, u, v);
        auto dp = separation_table_dp(point);
        auto exhaustive = separation_table_exhaustive(point);
        ASSERT_EQ(dp.size(), exhaustive.size());
        for (size_t t = 0; t < dp.size(); ++t) {
            EXPECT_NEAR(dp[t].value, exhaustive[t].value, 1e-9) << "trial " << trial;
            // The DP's quadruple must attain its reported value.
            int i = static_cast<int>(t) / v, j = static_cast<int>(t) % v;
            double attained = point.at(i, dp[t].l) + point.at(dp[t].k, j) +
                              point.at(dp[t].k, dp[t].l);
            EXPECT_NEAR(attained, dp[t].value, 1e-12);
            EXPECT_NE(dp[t].k, i);
            EXPECT_NE(dp[t].l, j);
        }
    }
}

TEST(Separation, EmptyOnIntegralPointsExactlyForBiclusterGraphs) {
    TestRng rng(8080);
    for (int trial = 0; trial < 300; ++trial) {
        auto instance = generate(GenSpec{2 + rng.below(5), 2 + rng.below(5), 0.4, rng.next()});
        FractionalPoint point = FractionalPoint::indicator(instance);
        bool dp_empty = separate_dp(point).empty();
        EXPECT_EQ(dp_empty, is_bicluster_graph(instance)) << "trial " << trial;
        EXPECT_EQ(separate_exhaustive(point).empty(), dp_empty);
    }
}

TEST(Separation, TieBreaksPickTheSmallestIndices) {
    // Symmetric point: every (k, l) candidate ties, so the smallest indices
    // must win.
    FractionalPoint point(3, 3, 1.0);
    point.set(0, 0, 0.0);
    auto table = separation_table_dp(point);
    EXPECT_EQ(table[0].k, 1);
    EXPECT_EQ(table[0].l, 1);
}

TEST(Separation, DpIsAtLeastTenTimesFasterAtThirtyByThirty) {
    TestRng rng(11);
    FractionalPoint point = random_point(rng, 30, 30);
    const int repetitions = 20;
    volatile double sink = 0.0;
    auto clock = [] { return std::chrono::steady_clock::now(); };
    auto start_dp = clock();
    for (int rep = 0; rep < repetitions; ++rep) {
        auto table = separation_table_dp(point);
        sink += table[17].value;
    }
    auto mid = clock();
    for (int rep = 0; rep < repetitions; ++rep) {
        auto table = separation_table_exhaustive(point);
        sink += table[17].value;
    }
    auto end = clock();
    double dp_seconds = std::chrono::duration<double>(mid - start_dp).count();
    double exhaustive_seconds = std::chrono::duration<double>(end - mid).count();
    EXPECT_GE(exhaustive_seconds, 10.0 * dp_seconds)
        << "dp " << dp_seconds << "s vs exhaustive " << exhaustive_seconds << "s";
}

}  // namespace
}  // namespace bicut
