#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"
#include "test_support.hpp"

namespace bicut {
namespace {

using testing::TestRng;

Biclusterization five_by_four_blocks() {
    // {u0,u1,u2 | v0,v1} and {u3,u4 | v2,v3}
    return Biclusterization({0, 0, 0, 1, 1}, {0, 0, 1, 1});
}

Biclusterization all_singletons(const BipartiteInstance& instance) {
    std::vector<int> u(instance.u_count()), v(instance.v_count());
    std::iota(u.begin(), u.end(), 0);
    std::iota(v.begin(), v.end(), instance.u_count());
    return Biclusterization(u, v);
}

TEST(Instance, ValidatesEdges) {
    EXPECT_THROW(BipartiteInstance(2, 2, {{2, 0}}), std::invalid_argument);
    EXPECT_THROW(BipartiteInstance(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
    EXPECT_THROW(BipartiteInstance(0, 2, {}), std::invalid_argument);
    BipartiteInstance instance(2, 3, {{1, 2}, {0, 0}});
    EXPECT_EQ(instance.edge_count(), 2);
    EXPECT_TRUE(instance.has_edge(0, 0));
    EXPECT_TRUE(instance.has_edge(1, 2));
    EXPECT_FALSE(instance.has_edge(0, 1));
}

TEST(Biclusterization, CanonicalizesSamePartClustersToSingletons) {
    // u0 and u1 grouped alone together: no internal edges, so the canonical
    // form splits them.
    Biclusterization clustering({7, 7, 3}, {3, 9});
    EXPECT_EQ(clustering.u_labels(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(clustering.v_labels(), (std::vector<int>{2, 3}));
    EXPECT_EQ(clustering.cluster_count(), 4);
}

TEST(Biclusterization, DenseRelabelInFirstAppearanceOrder) {
    Biclusterization clustering({5, 2, 5}, {2, 5});
    EXPECT_EQ(clustering.u_labels(), (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(clustering.v_labels(), (std::vector<int>{1, 0}));
}

TEST(EditCost, FiveByFourBlocks) {
    auto instance = testing::five_by_four();
    auto [a, d] = edit_cost(instance, five_by_four_blocks());
    EXPECT_EQ(a, 2);  // (u2,v0) and (u4,v2) missing inside the blocks
    EXPECT_EQ(d, 0);
}

TEST(EditCost, AllSingletonsDeletesEverything) {
    auto instance = testing::five_by_four();
    auto [a, d] = edit_cost(instance, all_singletons(instance));
    EXPECT_EQ(a, 0);
    EXPECT_EQ(d, instance.edge_count());
}

TEST(EditCost, EdgelessSingleClusterFillsTheBiclique) {
    auto instance = testing::edgeless(3, 4);
    Biclusterization one_cluster({0, 0, 0}, {0, 0, 0, 0});
    auto [a, d] = edit_cost(instance, one_cluster);
    EXPECT_EQ(a, 12);
    EXPECT_EQ(d, 0);
}

TEST(EditCost, RejectsMismatchedShape) {
    auto instance = testing::five_by_four();
    Biclusterization wrong({0, 0}, {0, 0});
    EXPECT_THROW(edit_cost(instance, wrong), std::invalid_argument);
}

// Independent matrix-walk implementation: d = ones outside cells, a = zeros
// inside cells, straight from the matrix view.
std::pair<long long, long long> matrix_walk_cost(const BipartiteInstance& instance,
                                                 const Biclusterization& clustering) {
    long long zeros_inside = 0, ones_outside = 0;
    for (int i = 0; i < instance.u_count(); ++i)
        for (int j = 0; j < instance.v_count(); ++j) {
            bool inside = clustering.u_labels()[i] == clustering.v_labels()[j];
            if (inside && !instance.has_edge(i, j)) ++zeros_inside;
            if (!inside && instance.has_edge(i, j)) ++ones_outside;
        }
    return {zeros_inside, ones_outside};
}

TEST(EditCost, AgreesWithMatrixWalkOnRandomClusterings) {
    TestRng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int u = 1 + rng.below(6), v = 1 + rng.below(6);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < v; ++j)
                if (rng.unit() < 0.4) edges.emplace_back(i, j);
        BipartiteInstance instance(u, v, edges);
        std::vector<int> ul(u), vl(v);
        int k = 1 + rng.below(u + v);
        for (int& x : ul) x = rng.below(k);
        for (int& x : vl) x = rng.below(k);
        Biclusterization clustering(ul, vl);
        auto [a, d] = edit_cost(instance, clustering);
        auto [walk_a, walk_d] = matrix_walk_cost(instance, clustering);
        EXPECT_EQ(a, walk_a);
        EXPECT_EQ(d, walk_d);
    }
}

TEST(IsBiclusterGraph, EdgelessIsTrue) {
    EXPECT_TRUE(is_bicluster_graph(testing::edgeless(3, 3)));
}

TEST(IsBiclusterGraph, LoneP4IsFalse) { EXPECT_FALSE(is_bicluster_graph(testing::lone_p4())); }

TEST(IsBiclusterGraph, FiveByFourIsFalse) {
    // Component {u0,u1,u2 | v0,v1} misses the edge (u2, v0).
    EXPECT_FALSE(is_bicluster_graph(testing::five_by_four()));
}

TEST(IsBiclusterGraph, DisjointBicliquesAreTrue) {
    BipartiteInstance instance(3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}});
    EXPECT_TRUE(is_bicluster_graph(instance));
}

TEST(GroupingEfficacy, SevenByFiveBlockAssignment) {
    auto instance = testing::seven_by_five();
    // {P1,P3,P7 | M2,M3,M5} and {P2,P4,P5,P6 | M1,M4}, zero-based.
    Biclusterization cells({0, 1, 0, 1, 1, 1, 0}, {1, 0, 0, 1, 0});
    Efficacy efficacy = grouping_efficacy(instance, cells);
    EXPECT_EQ(efficacy, Efficacy(14, 19));
    EXPECT_EQ(efficacy.num(), 14);
    EXPECT_EQ(efficacy.den(), 19);
}

TEST(GroupingEfficacy, PerfectBlockDiagonalScoresOne) {
    BipartiteInstance instance(4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2},
                                      {3, 3}});
    Biclusterization natural({0, 0, 1, 1}, {0, 0, 1, 1});
    EXPECT_EQ(grouping_efficacy(instance, natural), Efficacy(1, 1));
}

TEST(GroupingEfficacy, AllSingletonsScoreZero) {
    auto instance = testing::five_by_four();
    EXPECT_EQ(grouping_efficacy(instance, all_singletons(instance)), Efficacy(0, 8));
}

TEST(GroupingEfficacy, UndefinedWithoutEdges) {
    auto instance = testing::edgeless(2, 2);
    EXPECT_THROW(grouping_efficacy(instance, all_singletons(instance)), std::invalid_argument);
}

TEST(GroupingEfficacy, StaysInUnitIntervalAndOneMeansExact) {
    TestRng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        int u = 1 + rng.below(5), v = 1 + rng.below(5);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < v; ++j)
                if (rng.unit() < 0.5) edges.emplace_back(i, j);
        if (edges.empty()) continue;
        BipartiteInstance instance(u, v, edges);
        std::vector<int> ul(u), vl(v);
        for (int& x : ul) x = rng.below(4);
        for (int& x : vl) x = rng.below(4);
        Biclusterization clustering(ul, vl);
        Efficacy efficacy = grouping_efficacy(instance, clustering);
        EXPECT_GE(efficacy, Efficacy(0, 1));
        EXPECT_LE(efficacy, Efficacy(1, 1));
        auto [a, d] = edit_cost(instance, clustering);
        EXPECT_EQ(efficacy == Efficacy(1, 1), a == 0 && d == 0);
    }
}

// For a fixed edit budget k, the efficacy (m-d)/(m+a) with a+d=k is
// maximized by spending everything on additions.
TEST(GroupingEfficacy, AdditionsBeatDeletionsAtFixedBudget) {
    for (long long m = 1; m <= 100; m += 9)
        for (long long k = 0; k <= 50; ++k) {
            Efficacy all_additions(m, m + k);
            for (long long d = 0; d <= std::min(k, m); ++d)
                EXPECT_LE(Efficacy(m - d, m + k - d), all_additions);
        }
}

TEST(SizeConstraints, FiveByFourBlocksSatisfyTwoByTwo) {
    auto instance = testing::five_by_four();
    EXPECT_TRUE(check_size_constraints(instance, five_by_four_blocks(), 2, 2));
}

TEST(SizeConstraints, SingletonFailsTwoByTwo) {
    auto instance = testing::five_by_four();
    EXPECT_FALSE(check_size_constraints(instance, all_singletons(instance), 2, 2));
}

TEST(SizeConstraints, ZeroMinimaAreVacuous) {
    auto instance = testing::five_by_four();
    EXPECT_TRUE(check_size_constraints(instance, all_singletons(instance), 0, 0));
}

TEST(Cells, BlockStructure) {
    auto cells = cells_of(five_by_four_blocks());
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0].rows, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(cells[0].cols, (std::vector<int>{0, 1}));
    EXPECT_EQ(cells[1].rows, (std::vector<int>{3, 4}));
    EXPECT_EQ(cells[1].cols, (std::vector<int>{2, 3}));
}

TEST(Cells, SingletonsYieldOneCellPerVertex) {
    auto instance = testing::five_by_four();
    EXPECT_EQ(cells_of(all_singletons(instance)).size(), 9u);
}

TEST(Cells, SingleClusterHoldsEverything) {
    Biclusterization one({0, 0, 0}, {0, 0});
    auto cells = cells_of(one);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].rows.size(), 3u);
    EXPECT_EQ(cells[0].cols.size(), 2u);
}

TEST(Cells, RoundTripReproducesCanonicalClustering) {
    TestRng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int u = 1 + rng.below(6), v = 1 + rng.below(6);
        std::vector<int> ul(u), vl(v);
        for (int& x : ul) x = rng.below(5);
        for (int& x : vl) x = rng.below(5);
        Biclusterization clustering(ul, vl);
        EXPECT_EQ(clustering_from_cells(cells_of(clustering), u, v), clustering);
    }
}

TEST(Cells, RejectsIncompleteCover) {
    std::vector<Cell> cells{Cell{{0}, {0, 1}}};  // u1 missing
    EXPECT_THROW(clustering_from_cells(cells, 2, 2), std::invalid_argument);
}

TEST(EditSolution, ListsMatchCounts) {
    auto instance = testing::five_by_four();
    EditSolution solution = make_edit_solution(instance, five_by_four_blocks());
    EXPECT_EQ(solution.a(), 2);
    EXPECT_EQ(solution.d(), 0);
    EXPECT_EQ(solution.added,
              (std::vector<std::pair<int, int>>{{2, 0}, {4, 2}}));
    EXPECT_TRUE(solution.removed.empty());
}

}  // namespace
}  // namespace bicut
