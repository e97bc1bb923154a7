#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "signed_hk/verify.hpp"

using namespace signed_hk;
using namespace signed_hk::verify;

namespace {

constexpr std::uint64_t kSeed = 20240601;

void expect_clean(const CheckReport& r)
{
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    EXPECT_GT(r.instances, 0u);
}

} // namespace

TEST(Partition, SplitsByDirectionAndTieBreak)
{
    // node 1 sits between a repulsive node above and one below, and ties with
    // repulsive node 3 (higher index -> pushes 1 down).
    auto g = build_signed_graph(5, {{0, 1, -1}, {1, 2, -1}, {1, 3, -1}, {1, 4, 1}});
    OpinionState x{0.6, 0.5, 0.45, 0.5, 0.55};
    auto p = partition_neighborhood(1, x, g, 0.2);
    EXPECT_EQ(p.attractive, (std::vector<std::size_t>{1, 4}));
    EXPECT_EQ(p.upper, (std::vector<std::size_t>{0, 3}));
    EXPECT_EQ(p.lower, (std::vector<std::size_t>{2}));
    EXPECT_EQ(p.size(), 5u);

    auto q = partition_neighborhood(3, x, g, 0.2);
    EXPECT_EQ(q.lower, (std::vector<std::size_t>{1}));
    EXPECT_TRUE(q.upper.empty());
}

TEST(Partition, OutOfConfidenceNeighborsExcluded)
{
    auto g = build_signed_graph(3, {{0, 1, -1}, {0, 2, 1}});
    OpinionState x{0.0, 0.3, -0.3};
    auto p = partition_neighborhood(0, x, g, 0.3);
    EXPECT_EQ(p.attractive, (std::vector<std::size_t>{0}));
    EXPECT_TRUE(p.upper.empty());
    EXPECT_TRUE(p.lower.empty());
}

TEST(Partition, AverageFormMatchesStepOnExample)
{
    auto g = build_signed_graph(4, {{0, 1, -1}, {0, 2, 1}, {0, 3, -1}});
    OpinionState x{0.5, 0.6, 0.4, 0.35};
    const double c = 0.25;
    auto next = step(x, g, [&] { ModelParams p; p.c = c; return p; }());
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(average_form(partition_neighborhood(i, x, g, c), x, c), next[i], 1e-12);
}

TEST(Checks, AverageForm) { expect_clean(check_average_form(1000, kSeed)); }

TEST(Checks, AverageFormExercisesTies)
{
    auto r = check_average_form(1000, kSeed);
    EXPECT_GT(r.diagnostics["tie_break_pairs_seen"].get<std::size_t>(), 0u);
}

TEST(Checks, TwoNodeTable)
{
    auto r = check_two_node({0.05, 0.1, 0.4, 1.0}, kSeed);
    expect_clean(r);
    EXPECT_EQ(r.instances, 4u * 3u * 4u);
}

TEST(Checks, OrderPreservationOnCompleteGraphs)
{
    auto r = check_order_preservation(200, 8, kSeed);
    expect_clean(r);
}

TEST(Checks, OrderBreaksAreSeenOnIncompleteGraphs)
{
    // Diagnostic only; the counterexamples exist, so the count is positive.
    auto r = check_order_preservation(200, 8, kSeed);
    EXPECT_GT(r.diagnostics["incomplete_graph_order_breaks"].get<std::size_t>(), 0u);
}

TEST(Checks, ExtremeGapBounds)
{
    auto r = check_extreme_gap_bounds(200, kSeed);
    expect_clean(r);
    EXPECT_GT(r.diagnostics["steps_checked"].get<std::size_t>(), 100u);
}

TEST(Checks, ExtremeGapEqualsCWithoutSharedPushers)
{
    // Two repelling nodes plus one far away: the top pair lands exactly c apart.
    auto g = instances::complete_graph(3, -1);
    const double c = 0.5;
    OpinionState x{0.9, 0.8, -2.0};
    ModelParams p;
    p.c = c;
    auto next = step(x, g, p);
    EXPECT_NEAR(next[0] - next[1], c, 1e-12);
}

TEST(Checks, GapWidth)
{
    auto r = check_gap_width(200, kSeed);
    expect_clean(r);
    EXPECT_GT(r.diagnostics["final_states_checked"].get<std::size_t>(), 0u);
}

TEST(Checks, WidthTheorem)
{
    auto r = check_width_theorem({2, 3, 5, 8, 10}, {0.05, 0.4, 1.0}, 5, kSeed);
    expect_clean(r);
}

TEST(Checks, ConjecturedBoundCounterexample)
{
    // One repulsive edge among three nodes spread wider than c: the pair
    // separates to c and pushes past the initial extreme.
    auto g = build_signed_graph(3, {{1, 2, -1}});
    ModelParams p;
    p.c = 0.6;
    auto traj = run(OpinionState{0.0, 0.9, 1.0}, g, p);
    ASSERT_TRUE(traj.converged);
    EXPECT_NEAR(traj.final_state()[2], 1.25, 1e-12);
    EXPECT_GT(traj.final_state().width(), std::max(1.0, g.edge_count() * p.c));
}

TEST(Checks, ConjecturedBoundHarnessReportsFindingsWithReplaySeeds)
{
    auto r = check_conjectured_bound(1000, kSeed);
    EXPECT_FALSE(r.proven);
    ASSERT_FALSE(r.passed());
    const auto& v = r.violations.front();
    auto inst = instances::random_signed(v.seed, 20);
    EXPECT_EQ(inst.graph.size(), v.n);
    EXPECT_EQ(inst.c, v.c);
    ModelParams p;
    p.c = inst.c;
    auto traj = run(inst.initial, inst.graph, p);
    EXPECT_GT(traj.final_state().width(),
              std::max(inst.initial.width(), static_cast<double>(inst.graph.edge_count()) * inst.c) + 1e-9);
}

TEST(Checks, NaiveNonConvergence)
{
    auto r = check_naive_nonconvergence(kSeed);
    expect_clean(r);
    EXPECT_GT(r.diagnostics["naive_cycle_period"].get<std::size_t>(), 1u);
}

TEST(Checks, InstancesReplayFromSeed)
{
    const auto seed = derive_seed(kSeed, "average_form", {17});
    auto a = instances::random_signed(seed, 8);
    auto b = instances::random_signed(seed, 8);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.initial, b.initial);
    EXPECT_EQ(a.c, b.c);
    auto c1 = instances::complete_repulsive(seed, 8);
    auto c2 = instances::complete_repulsive(seed, 8);
    EXPECT_EQ(c1.initial, c2.initial);
}

TEST(Checks, ReportsAreDeterministic)
{
    EXPECT_EQ(check_gap_width(50, 3).to_json(), check_gap_width(50, 3).to_json());
    EXPECT_NE(check_gap_width(50, 3).to_json()["diagnostics"], check_gap_width(50, 4).to_json()["diagnostics"]);
}

TEST(Report, PassedTracksViolations)
{
    CheckReport r;
    r.name = "x";
    EXPECT_TRUE(r.passed());
    r.fail(1, 2, 0.5, "bad");
    EXPECT_FALSE(r.passed());
    auto j = r.to_json();
    EXPECT_EQ(j["passed"], false);
    EXPECT_EQ(j["violations"][0]["seed"], 1);
    EXPECT_EQ(j["violations"][0]["detail"], "bad");
}

TEST(Report, ConjectureFailuresDoNotFailProvenSuite)
{
    CheckReport proven, conj;
    proven.name = "p";
    conj.name = "c";
    conj.proven = false;
    conj.fail(0, 1, 1.0, "counterexample");
    EXPECT_TRUE(proven_checks_passed({proven, conj}));
    proven.fail(0, 1, 1.0, "bug");
    EXPECT_FALSE(proven_checks_passed({proven, conj}));
}

TEST(Suite, UnknownCheckRejected)
{
    try {
        run_suite({"nope"}, SuiteOptions{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unknown_parameter);
    }
}

TEST(Suite, AllExpandsToEveryCheck)
{
    SuiteOptions o;
    o.average_trials = o.order_trials = o.gap_trials = o.conjecture_trials = 5;
    o.width_trials = 1;
    o.width_n_grid = {3};
    o.width_c_grid = {0.4};
    auto reports = run_suite({"all"}, o);
    ASSERT_EQ(reports.size(), suite_names().size());
    EXPECT_TRUE(proven_checks_passed(reports));
}
