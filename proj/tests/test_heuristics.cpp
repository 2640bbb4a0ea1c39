#include "mwt/heuristics/closure.hpp"
#include "mwt/heuristics/rules.hpp"
#include "mwt/oracle/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mwt {
namespace {

using heur::EdgeStatus;
using heur::Rule;

EdgeId edge(const Instance& inst, PointId a, PointId b) { return *inst.edge_between(a, b); }

TEST(BetaSkeleton, SquareDiagonalFails) {
    const auto& sq = test::square();
    EXPECT_FALSE(heur::beta_skeleton_test(sq, edge(sq, 0, 2), heur::default_beta()));
    EXPECT_FALSE(heur::beta_skeleton_test(sq, edge(sq, 1, 3), heur::default_beta()));
}

TEST(BetaSkeleton, IsolatedEdgePasses) {
    auto inst = geom::parse_instance("0 0\n1 0\n1000 1000\n");
    EXPECT_TRUE(heur::beta_skeleton_test(inst, edge(inst, 0, 1), heur::default_beta()));
}

TEST(BetaSkeleton, EquilateralHullEdgeFails) {
    // Apex angle pi/3 exceeds arcsin(sin(pi/3.1)) = pi/3.1.
    auto inst = geom::parse_instance("0 0\n2 0\n1 1.7320508\n");
    for (const Edge& e : inst.edges()) {
        const double apex = std::numbers::pi / 3;
        EXPECT_GT(apex, std::asin(1.0 / heur::default_beta()));
        EXPECT_FALSE(heur::beta_skeleton_test(inst, *inst.edge_between(e.u, e.v), heur::default_beta()));
    }
}

TEST(BetaSkeleton, RejectsUnsoundBeta) {
    const auto& sq = test::square();
    EXPECT_THROW(heur::beta_skeleton_test(sq, 0, 1.0), InputError);
    heur::HeuristicConfig c;
    EXPECT_NO_THROW(c.validate());
    c.beta = 1.1;
    EXPECT_THROW(c.validate(), InputError);
    c = {};
    c.diamond_angle = 2.0;
    EXPECT_THROW(c.validate(), InputError);
}

TEST(Yxy, UncrossedEdgePasses) {
    const auto& tc = test::tri_center();
    for (EdgeId e = 0; e < tc.edges().size(); ++e) EXPECT_TRUE(heur::yxy_test(tc, e));
}

TEST(Yxy, MutualNearestNeighboursPass) {
    auto inst = geom::parse_instance("0 0\n1 0\n10 0\n10 10\n0 10\n5 -7\n");
    EXPECT_TRUE(heur::yxy_test(inst, edge(inst, 0, 1)));
}

TEST(Yxy, SquareDiagonalFails) {
    const auto& sq = test::square();
    EXPECT_FALSE(heur::yxy_test(sq, edge(sq, 0, 2)));
}

TEST(Diamond, HullEdgeNeverExcluded) {
    const auto inst = geom::random_instance(15, 11);
    for (EdgeId e : geom::hull_edges(inst)) EXPECT_FALSE(heur::diamond_test(inst, e, heur::default_diamond_angle()));
}

TEST(Diamond, LongEdgeThroughClusterExcluded) {
    auto inst = geom::parse_instance("0 0\n100 0\n50 1\n50 -1\n49 2\n51 -2\n50 60\n50 -60\n");
    EXPECT_TRUE(heur::diamond_test(inst, edge(inst, 0, 1), heur::default_diamond_angle()));
}

TEST(Diamond, FourPointConvexSetKeepsEverything) {
    auto inst = geom::parse_instance("0 0\n3 0\n4 2\n1 3\n");
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        EXPECT_FALSE(heur::diamond_test(inst, e, heur::default_diamond_angle()));
}

TEST(LocallyMinimal, SquareDiagonalTieCounts) {
    const auto& sq = test::square();
    EXPECT_EQ(heur::locally_minimal_pairs(sq, edge(sq, 0, 2)).size(), 1u);
}

TEST(LocallyMinimal, NonConvexQuadIncluded) {
    auto inst = geom::parse_instance("0 0\n4 0\n1 1\n0 4\n");
    EXPECT_EQ(heur::locally_minimal_pairs(inst, edge(inst, 0, 2)).size(), 1u);
}

TEST(LocallyMinimal, LongerDiagonalExcluded) {
    auto inst = geom::parse_instance("0 0\n3 0\n3 1\n0 1\n");
    EXPECT_TRUE(heur::locally_minimal_pairs(inst, edge(inst, 0, 2)).size() == 1u);
    auto kite = geom::parse_instance("0 0\n4 -1\n8 0\n4 1\n");
    EXPECT_TRUE(heur::locally_minimal_pairs(kite, edge(kite, 0, 2)).empty());
    EXPECT_EQ(heur::locally_minimal_pairs(kite, edge(kite, 1, 3)).size(), 1u);
}

TEST(LocallyMinimal, OneSidedEdgeHasNoPairs) {
    const auto& tc = test::tri_center();
    EXPECT_TRUE(heur::locally_minimal_pairs(tc, edge(tc, 0, 1)).empty());
}

TEST(Closure, TriangleWithCenterForcesSpokes) {
    const auto& tc = test::tri_center();
    const auto ledger = heur::run_closure(tc);
    for (PointId p = 0; p < 3; ++p) EXPECT_EQ(ledger.status(edge(tc, p, 3)), EdgeStatus::ForcedIn);
    EXPECT_EQ(ledger.count(EdgeStatus::Unknown), 0u);
    const auto sk = heur::skeleton_faces(ledger, tc);
    EXPECT_EQ(sk.faces.size(), 3u);
    EXPECT_TRUE(sk.solvable);
}

TEST(Closure, SquareDiagonalsStayUnknown) {
    const auto& sq = test::square();
    const auto ledger = heur::run_closure(sq);
    EXPECT_EQ(ledger.status(edge(sq, 0, 2)), EdgeStatus::Unknown);
    EXPECT_EQ(ledger.status(edge(sq, 1, 3)), EdgeStatus::Unknown);
    const auto sk = heur::skeleton_faces(ledger, sq);
    ASSERT_EQ(sk.faces.size(), 1u);
    EXPECT_TRUE(sk.solvable);
}

TEST(Closure, CircleWithCenterIsNotSolvable) {
    const auto ledger = heur::run_closure(test::circle13());
    EXPECT_FALSE(heur::skeleton_faces(ledger, test::circle13()).solvable);
}

TEST(Closure, LedgerInvariants) {
    for (const auto& inst : test::corpus(20, 500, 8, 20)) {
        const auto ledger = heur::run_closure(inst);
        for (EdgeId e : geom::hull_edges(inst)) EXPECT_TRUE(ledger.forced_in(e));
        const auto in = ledger.edges_with(EdgeStatus::ForcedIn);
        for (std::size_t i = 0; i < in.size(); ++i)
            for (std::size_t j = i + 1; j < in.size(); ++j) EXPECT_FALSE(inst.edges_cross(in[i], in[j]));
        EXPECT_NO_THROW(heur::skeleton_faces(ledger, inst));
    }
}

TEST(Closure, SoundAgainstEveryOptimum) {
    for (const auto& inst : test::corpus(40, 600, 5, 11)) {
        const auto ledger = heur::run_closure(inst);
        const auto bf = oracle::brute_force_mwt(inst);
        for (const auto& opt : bf.optima) {
            const auto used = oracle::edges_of(inst, opt.triangles);
            for (EdgeId e = 0; e < inst.edges().size(); ++e) {
                const bool in = std::binary_search(used.begin(), used.end(), e);
                if (ledger.forced_in(e)) { EXPECT_TRUE(in) << "edge " << e; }
                if (ledger.forced_out(e)) { EXPECT_FALSE(in) << "edge " << e; }
            }
        }
    }
}

TEST(Closure, IndependentOfVisitOrder) {
    std::mt19937_64 rng(9);
    for (const auto& inst : test::corpus(10, 700, 10, 25)) {
        const auto base = heur::run_closure(inst);
        heur::ClosureOptions opt;
        opt.visit_order.resize(inst.edges().size());
        std::iota(opt.visit_order.begin(), opt.visit_order.end(), EdgeId{0});
        for (int k = 0; k < 3; ++k) {
            std::shuffle(opt.visit_order.begin(), opt.visit_order.end(), rng);
            EXPECT_TRUE(heur::run_closure(inst, {}, opt) == base);
        }
    }
}

TEST(Closure, DisablingRulesNeverGrowsForcedSets) {
    for (const auto& inst : test::corpus(10, 800, 8, 20)) {
        const auto full = heur::run_closure(inst);
        for (Rule r : heur::kOptionalRules) {
            heur::HeuristicConfig c;
            c.rules.disable(r);
            const auto less = heur::run_closure(inst, c);
            for (EdgeId e = 0; e < inst.edges().size(); ++e) {
                if (less.forced_in(e)) { EXPECT_TRUE(full.forced_in(e)); }
                if (less.forced_out(e)) { EXPECT_TRUE(full.forced_out(e)); }
            }
        }
    }
}

TEST(Closure, NoRulesLeavesOnlyBoundary) {
    const auto inst = geom::random_instance(12, 4);
    heur::HeuristicConfig c;
    c.rules = heur::RuleSet::none();
    const auto ledger = heur::run_closure(inst, c);
    EXPECT_EQ(ledger.count(EdgeStatus::ForcedIn), geom::hull_edges(inst).size());
    EXPECT_EQ(ledger.count(EdgeStatus::ForcedOut), 0u);
}

TEST(Closure, ShortestEdgeForcedIn) {
    for (const auto& inst : test::corpus(30, 900, 6, 30)) {
        const auto ledger = heur::run_closure(inst);
        EdgeId shortest = 0;
        for (EdgeId e = 1; e < inst.edges().size(); ++e)
            if (inst.edge(e).length < inst.edge(shortest).length) shortest = e;
        const double l = inst.edge(shortest).length;
        bool unique = true;
        for (EdgeId e = 0; e < inst.edges().size(); ++e)
            if (e != shortest && inst.edge(e).length <= l * (1 + 1e-12)) unique = false;
        if (unique) { EXPECT_TRUE(ledger.forced_in(shortest)); }
    }
}

TEST(Closure, ProvenanceRecordsRuleAndRound) {
    const auto& tc = test::tri_center();
    const auto ledger = heur::run_closure(tc);
    for (EdgeId e : geom::hull_edges(tc)) EXPECT_EQ(ledger.provenance(e).rule, Rule::Boundary);
    const auto p = ledger.provenance(edge(tc, 0, 3));
    EXPECT_NE(p.rule, Rule::None);
    EXPECT_NE(p.rule, Rule::Boundary);
}

TEST(Closure, ConflictIsAnInvariantError) {
    heur::EdgeStatusLedger l(3);
    l.force(0, EdgeStatus::ForcedIn, Rule::Boundary, 0);
    EXPECT_NO_THROW(l.force(0, EdgeStatus::ForcedIn, Rule::Yxy, 1));
    EXPECT_THROW(l.force(0, EdgeStatus::ForcedOut, Rule::Diamond, 1), InvariantError);
}

TEST(Rules, ParseNames) {
    for (Rule r : heur::kOptionalRules) EXPECT_EQ(heur::parse_rule(heur::to_string(r)), r);
    EXPECT_FALSE(heur::parse_rule("nonsense").has_value());
}

} // namespace
} // namespace mwt
