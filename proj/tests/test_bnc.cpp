#include "bicut/bnc.hpp"

#include <gtest/gtest.h>

#include "bicut/io.hpp"
#include "bicut/model.hpp"
#include "bicut/oracle.hpp"
#include "bicut/preprocess.hpp"
#include "test_support.hpp"

namespace bicut {
namespace {

using testing::TestRng;

BncConfig quick_config(SeparatorKind separator = SeparatorKind::Dp) {
    BncConfig config;
    config.separator = separator;
    return config;
}

TEST(BncConfig, RejectsNonPositiveLimits) {
    BncConfig config;
    config.node_limit = 0;
    EXPECT_THROW(config.validate(), std::invalid_argument);
}

TEST(Bgep, EdgelessOptimumIsZero) {
    MilpResult result = solve(build_bgep(testing::edgeless(3, 4)), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.objective_exact, Rational(0, 1));
}

TEST(Bgep, LoneP4NeedsOneEdit) {
    MilpResult result = solve(build_bgep(testing::lone_p4()), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.objective_exact, Rational(1, 1));
    ASSERT_TRUE(result.incumbent.has_value());
    EXPECT_EQ(result.incumbent->total_edits(), 1);
}

TEST(Bgep, ChainWithIsolatedVertexNeedsOneDeletion) {
    // Optimal by removing the single chord; verified against the oracle.
    MilpResult result = solve(build_bgep(testing::chain_with_isolated()), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.objective_exact, Rational(1, 1));
}

TEST(Bgep, FiveByFourNeedsTwoEdits) {
    for (SeparatorKind separator :
         {SeparatorKind::Dp, SeparatorKind::Exhaustive, SeparatorKind::None}) {
        MilpResult result = solve(build_bgep(testing::five_by_four()), quick_config(separator));
        ASSERT_EQ(result.status, MilpStatus::Optimal);
        EXPECT_EQ(result.objective_exact, Rational(2, 1));
        EXPECT_EQ(result.best_bound, 2.0);
    }
}

TEST(Bgeps, ZeroMinimaMatchPlainEditProblem) {
    auto instance = testing::five_by_four();
    MilpResult plain = solve(build_bgep(instance), quick_config());
    MilpResult restricted = solve(build_bgeps(instance, 0, 0), quick_config());
    ASSERT_EQ(restricted.status, MilpStatus::Optimal);
    EXPECT_EQ(plain.objective_exact, restricted.objective_exact);
}

TEST(Bgeps, FiveByFourWithTwoByTwoMinimaStillNeedsTwoEdits) {
    MilpResult result = solve(build_bgeps(testing::five_by_four(), 2, 2), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.objective_exact, Rational(2, 1));
    EXPECT_TRUE(check_size_constraints(testing::five_by_four(), result.incumbent->clustering,
                                       2, 2));
}

TEST(Bgeps, RestrictionNeverImprovesTheOptimum) {
    TestRng rng(92);
    for (int trial = 0; trial < 15; ++trial) {
        auto instance = generate(GenSpec{2 + rng.below(4), 2 + rng.below(4), 0.4, rng.next()});
        MilpResult plain = solve(build_bgep(instance), quick_config());
        MilpResult restricted = solve(build_bgeps(instance, 2, 2), quick_config());
        ASSERT_EQ(plain.status, MilpStatus::Optimal);
        ASSERT_EQ(restricted.status, MilpStatus::Optimal);
        EXPECT_GE(restricted.objective_exact.num(), plain.objective_exact.num());
    }
}

TEST(Bgeps, StructurallyImpossibleMinimaAreRejected) {
    BipartiteInstance tiny(1, 1, {{0, 0}});
    EXPECT_THROW(build_bgeps(tiny, 2, 2), std::invalid_argument);
}

TEST(BgepsLambda, FiveByFourPrefersAdditionsUnderDeletionCap) {
    // lambda = 2 with u_opt = 1: only zero-deletion two-edit solutions left.
    MilpResult result =
        solve(build_bgeps_lambda(testing::five_by_four(), 0, 0, 2, 1), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.incumbent->a(), 2);
    EXPECT_EQ(result.incumbent->d(), 0);
}

TEST(BgepsLambda, ZeroEditsOnANonBiclusterGraphIsInfeasible) {
    MilpResult result = solve(build_bgeps_lambda(testing::lone_p4(), 0, 0, 0, 10),
                              quick_config());
    EXPECT_EQ(result.status, MilpStatus::Infeasible);
}

TEST(BgepsLambda, ZeroEditsOnABiclusterGraphIsFree) {
    BipartiteInstance instance(2, 2, {{0, 0}, {1, 1}});
    MilpResult result = solve(build_bgeps_lambda(instance, 0, 0, 0, 5), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.incumbent->a(), 0);
    EXPECT_EQ(result.incumbent->d(), 0);
}

TEST(BgepsLambda, ZeroDeletionCapShortCircuitsToInfeasible) {
    ModelSpec model = build_bgeps_lambda(testing::five_by_four(), 0, 0, 2, 0);
    EXPECT_TRUE(model.declared_infeasible);
    MilpResult result = solve(model, quick_config());
    EXPECT_EQ(result.status, MilpStatus::Infeasible);
    EXPECT_EQ(result.nodes, 0);
}

TEST(BgepsLambda, ExactTotalIsEnforced) {
    TestRng rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        auto instance = generate(GenSpec{3, 4, 0.5, rng.next()});
        auto [optimum, solution] = brute_force_bgep(instance);
        MilpResult result = solve(
            build_bgeps_lambda(instance, 0, 0, optimum + 1, instance.edge_count() + 1),
            quick_config());
        if (result.status != MilpStatus::Optimal) continue;  // no (optimum+1)-edit solution
        EXPECT_EQ(result.incumbent->total_edits(), optimum + 1);
    }
}

TEST(Solve, MatchesBruteForceOnThirtyRandomInstances) {
    TestRng rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        auto instance = generate(
            GenSpec{2 + rng.below(4), 2 + rng.below(4), 0.2 + 0.2 * rng.below(4), rng.next()},
            "t" + std::to_string(trial));
        auto [optimum, solution] = brute_force_bgep(instance);
        MilpResult result = solve(build_bgep(instance), quick_config());
        ASSERT_EQ(result.status, MilpStatus::Optimal) << "trial " << trial;
        EXPECT_EQ(result.objective_exact.num(), optimum) << "trial " << trial;
    }
}

TEST(Solve, SeparatorChoiceNeverChangesTheOptimum) {
    TestRng rng(164);
    for (int trial = 0; trial < 10; ++trial) {
        auto instance = generate(GenSpec{3 + rng.below(3), 3 + rng.below(3), 0.5, rng.next()});
        MilpResult dp = solve(build_bgep(instance), quick_config(SeparatorKind::Dp));
        MilpResult exhaustive =
            solve(build_bgep(instance), quick_config(SeparatorKind::Exhaustive));
        MilpResult none = solve(build_bgep(instance), quick_config(SeparatorKind::None));
        EXPECT_EQ(dp.objective_exact, exhaustive.objective_exact);
        EXPECT_EQ(dp.objective_exact, none.objective_exact);
    }
}

TEST(Solve, IncumbentReencodesExactly) {
    TestRng rng(55555);
    for (int trial = 0; trial < 15; ++trial) {
        auto instance = generate(GenSpec{2 + rng.below(4), 2 + rng.below(4), 0.5, rng.next()});
        MilpResult result = solve(build_bgep(instance), quick_config());
        ASSERT_EQ(result.status, MilpStatus::Optimal);
        const auto& clustering = result.incumbent->clustering;
        for (int i = 0; i < instance.u_count(); ++i)
            for (int j = 0; j < instance.v_count(); ++j) {
                int expected =
                    clustering.u_labels()[i] == clustering.v_labels()[j] ? 1 : 0;
                EXPECT_EQ(result.y[i * instance.v_count() + j], expected);
            }
    }
}

TEST(Solve, NodeLimitReportsHonestBounds) {
    BncConfig config = quick_config();
    config.node_limit = 1;
    config.separator = SeparatorKind::None;  // starve the root of cuts
    auto instance = testing::seven_by_five();
    MilpResult result = solve(build_bgep(instance), config);
    if (result.status == MilpStatus::Optimal) GTEST_SKIP() << "solved at the root";
    EXPECT_EQ(result.status, MilpStatus::LimitReached);
    MilpResult full = solve(build_bgep(instance), quick_config());
    EXPECT_LE(result.best_bound, full.objective + 1e-9);
}

TEST(Solve, PreprocessingKeepsTheOptimum) {
    TestRng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto instance =
            generate(GenSpec{2 + rng.below(4), 2 + rng.below(4), 0.15 + 0.05 * rng.below(3),
                             rng.next()});
        ModelSpec plain = build_bgep(instance);
        ModelSpec reduced = build_bgep(instance);
        apply_preprocess(reduced, preprocess(instance));
        MilpResult a = solve(plain, quick_config());
        MilpResult b = solve(reduced, quick_config());
        ASSERT_EQ(a.status, MilpStatus::Optimal);
        ASSERT_EQ(b.status, MilpStatus::Optimal);
        EXPECT_EQ(a.objective_exact, b.objective_exact) << "trial " << trial;
    }
}

TEST(Solve, PreprocessingOnlyAppliesToThePlainEditModel) {
    auto instance = testing::five_by_four();
    ModelSpec restricted = build_bgeps(instance, 2, 2);
    EXPECT_THROW(apply_preprocess(restricted, preprocess(instance)), std::invalid_argument);
}

TEST(McfpLinearModel, PerfectInstanceSelectsTheZeroEditPair) {
    BipartiteInstance instance(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    std::vector<XVarSpec> f_set{XVarSpec{0, 0, Rational(1, 1)}};
    MilpResult result = solve(build_mcfp_linear(instance, 0, 0, f_set), quick_config());
    ASSERT_EQ(result.status, MilpStatus::Optimal);
    EXPECT_EQ(result.selected_x, 0);
    EXPECT_EQ(result.objective_exact, Rational(1, 1));
}

TEST(McfpLinearModel, RejectsEmptyCandidateSet) {
    EXPECT_THROW(build_mcfp_linear(testing::five_by_four(), 0, 0, {}), std::invalid_argument);
}

TEST(RootRelaxation, BoundsTheOptimumFromBelow) {
    TestRng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        auto instance = generate(GenSpec{3, 3, 0.5, rng.next()});
        double root = root_relaxation_bound(build_bgep(instance), quick_config());
        auto [optimum, solution] = brute_force_bgep(instance);
        EXPECT_LE(root, static_cast<double>(optimum) + 1e-6);
    }
}

}  // namespace
}  // namespace bicut
