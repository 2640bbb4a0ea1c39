#include "mwt/geometry/generate.hpp"
#include "mwt/geometry/sample.hpp"
#include "mwt/heuristics/closure.hpp"
#include "mwt/lp/simplex.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/oracle/oracle.hpp"
#include "mwt/polygon/polygon_dp.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace mwt {
namespace {

lp::StandardForm make_sf(std::initializer_list<std::initializer_list<double>> A, std::initializer_list<double> b,
                         std::initializer_list<double> c) {
    lp::StandardForm sf;
    const auto m = static_cast<Eigen::Index>(A.size());
    const auto n = static_cast<Eigen::Index>(c.size());
    sf.A.resize(m, n);
    Eigen::Index i = 0;
    for (auto row : A) {
        Eigen::Index j = 0;
        for (double v : row) sf.A(i, j++) = v;
        ++i;
    }
    sf.b = Eigen::Map<const Eigen::VectorXd>(std::data(b), m);
    sf.c = Eigen::Map<const Eigen::VectorXd>(std::data(c), n);
    return sf;
}

TEST(Simplex, SmallOptimum) {
    // min -x0 - 2 x1, x0 + x1 + s0 = 4, x0 + 3 x1 + s1 = 6
    const auto sf = make_sf({{1, 1, 1, 0}, {1, 3, 0, 1}}, {4, 6}, {-1, -2, 0, 0});
    const auto r = lp::simplex(sf);
    ASSERT_EQ(r.status, lp::SimplexStatus::Optimal);
    EXPECT_NEAR(r.objective, -5.0, 1e-9);
    EXPECT_NEAR(r.x(0), 3.0, 1e-9);
    EXPECT_NEAR(r.x(1), 1.0, 1e-9);
}

TEST(Simplex, DetectsInfeasible) {
    const auto sf = make_sf({{1, 1}, {1, 1}}, {1, 2}, {1, 1});
    EXPECT_EQ(lp::simplex(sf).status, lp::SimplexStatus::Infeasible);
    const auto empty = make_sf({{0, 0}, {1, 1}}, {3, 1}, {1, 1});
    EXPECT_EQ(lp::simplex(empty).status, lp::SimplexStatus::Infeasible);
}

TEST(Simplex, DetectsUnbounded) {
    const auto sf = make_sf({{1, -1}}, {0}, {-1, 0});
    EXPECT_EQ(lp::simplex(sf).status, lp::SimplexStatus::Unbounded);
}

TEST(Simplex, DropsRedundantAndEmptyRows) {
    const auto sf = make_sf({{1, 1, 0}, {2, 2, 0}, {0, 0, 0}, {0, 1, 1}}, {1, 2, 0, 1}, {1, 2, 3});
    const auto r = lp::simplex(sf);
    ASSERT_EQ(r.status, lp::SimplexStatus::Optimal);
    EXPECT_EQ(r.empty_rows, 1u);
    EXPECT_GE(r.redundant_rows, 1u);
    EXPECT_NEAR(r.objective, 2.0, 1e-9); // x0 = 0, x1 = 1, x2 = 0
}

TEST(Simplex, NegativeRightHandSide) {
    const auto sf = make_sf({{-1, -1}}, {-2}, {1, 3});
    const auto r = lp::simplex(sf);
    ASSERT_EQ(r.status, lp::SimplexStatus::Optimal);
    EXPECT_NEAR(r.objective, 2.0, 1e-9);
}

TEST(BuildLp, UnitSquareShape) {
    const auto& sq = test::square();
    const auto lp = lp::build_lp(sq);
    EXPECT_EQ(lp.num_columns(), 4u);
    EXPECT_EQ(lp.num_rows(), 6u);
    std::map<std::uint32_t, int> appearances;
    for (const auto& r : lp.rows)
        for (auto [c, v] : r.entries) {
            ++appearances[c];
            EXPECT_TRUE(v == 1 || v == -1);
        }
    for (auto [c, k] : appearances) EXPECT_EQ(k, 3);
    // Each diagonal row balances the two triangles on either side.
    for (const auto& r : lp.rows)
        if (r.kind == lp::RowKind::Balance) {
            EXPECT_EQ(r.entries.size(), 2u);
            EXPECT_EQ(r.entries[0].second + r.entries[1].second, 0);
        }
}

TEST(BuildLp, TriangleWithCenterPinsTriangles) {
    const auto& tc = test::tri_center();
    const auto lp = lp::build_lp(tc);
    EXPECT_EQ(lp.num_columns(), 3u);
    for (const auto& r : lp.rows)
        if (r.kind == lp::RowKind::Boundary) {
            EXPECT_EQ(r.entries.size(), 1u);
            EXPECT_EQ(r.rhs, 1.0);
        }
}

TEST(BuildLp, LedgerRemovesTrianglesOnForcedOutEdges) {
    for (const auto& inst : test::corpus(10, 3000, 10, 10)) {
        const auto ledger = heur::run_closure(inst);
        const auto lp = lp::build_lp(inst, &ledger);
        std::size_t keep = 0;
        for (const auto& T : inst.triangles())
            keep += std::none_of(T.e.begin(), T.e.end(), [&](EdgeId e) { return ledger.forced_out(e); });
        EXPECT_EQ(lp.num_columns(), keep);
        EXPECT_EQ(lp.removed_triangles, inst.triangles().size() - keep);
        std::size_t forced_interior = 0;
        for (EdgeId e : ledger.edges_with(heur::EdgeStatus::ForcedIn)) forced_interior += !inst.edge(e).is_boundary;
        EXPECT_EQ(lp.forcing_rows, 2 * forced_interior);
    }
}

TEST(SolveLp, TriangleWithCenter) {
    const auto& tc = test::tri_center();
    const auto lp = lp::build_lp(tc);
    const auto sol = lp::solve_to_extreme_point(tc, lp);
    for (double w : sol.x.weights) EXPECT_NEAR(w, 1.0, 1e-9);
    const double expected = 4 + 2 * std::sqrt(13.0) + 2 * std::sqrt(5.0) + 2;
    EXPECT_NEAR(sol.x.objective, expected, 1e-9);
    const auto cls = lp::classify_solution(tc, sol.x);
    EXPECT_EQ(cls.kind, lp::SolutionKind::Integral);
    EXPECT_EQ(cls.triangles.size(), 3u);
}

TEST(SolveLp, UnitSquare) {
    const auto& sq = test::square();
    const auto sol = lp::solve_to_extreme_point(sq, lp::build_lp(sq));
    EXPECT_NEAR(sol.x.objective, 4 + std::sqrt(2.0), 1e-9);
    EXPECT_EQ(lp::classify_solution(sq, sol.x).kind, lp::SolutionKind::Integral);
}

TEST(SolveLp, ConvexPolygonsAreIntegral) {
    for (std::size_t n = 4; n <= 12; ++n) {
        const auto inst = test::convex_ngon(n);
        const auto sol = lp::solve_to_extreme_point(inst, lp::build_lp(inst));
        EXPECT_EQ(lp::classify_solution(inst, sol.x).kind, lp::SolutionKind::Integral) << n;
    }
}

TEST(SolveLp, CircleWithCenterIsFractional) {
    const auto& k = test::circle13();
    const auto sol = lp::solve_to_extreme_point(k, lp::build_lp(k));
    const auto cls = lp::classify_solution(k, sol.x);
    EXPECT_EQ(cls.kind, lp::SolutionKind::Fractional);
    EXPECT_FALSE(cls.fractional.empty());
}

TEST(SolveLp, WeakDualityAndResiduals) {
    for (const auto& inst : test::corpus(30, 3100, 5, 11)) {
        const auto lp = lp::build_lp(inst);
        const auto sol = lp::solve_to_extreme_point(inst, lp);
        EXPECT_LE(lp::max_residual(lp, sol.x), 1e-9);
        const auto bf = oracle::brute_force_mwt(inst);
        EXPECT_LE(sol.x.objective, bf.cost + 1e-6);
        for (double w : sol.x.weights) EXPECT_GE(w, -1e-9);
    }
}

TEST(SolveLp, CoversSamplePointsWithWeightOne) {
    std::mt19937_64 rng(17);
    for (const auto& inst : test::corpus(10, 3200, 6, 14)) {
        const auto sol = lp::solve_to_extreme_point(inst, lp::build_lp(inst));
        std::vector<PointId> hull(inst.hull().begin(), inst.hull().end());
        int good = 0;
        for (int attempt = 0; attempt < 1000 && good < 20; ++attempt) {
            const auto s = geom::sample_in_convex_polygon(hull, rng);
            double cover = 0.0;
            bool on_edge = false;
            for (TriangleId t = 0; t < inst.triangles().size(); ++t) {
                const int where = geom::locate(inst, std::span<const PointId, 3>(inst.triangle(t).v), s);
                on_edge = on_edge || (where == 0 && sol.x.weights[t] != 0.0);
                if (where > 0) cover += sol.x.weights[t];
            }
            if (on_edge) continue;
            ++good;
            EXPECT_NEAR(cover, 1.0, 1e-7);
        }
        EXPECT_EQ(good, 20);
    }
}

TEST(SolveLp, LedgerEdgesGetZeroOrOneWithoutForcingRows) {
    for (const auto& inst : test::corpus(30, 3300, 6, 14)) {
        const auto ledger = heur::run_closure(inst);
        const auto sol = lp::solve_to_extreme_point(inst, lp::build_lp(inst));
        for (EdgeId e = 0; e < inst.edges().size(); ++e) {
            if (ledger.forced_in(e)) { EXPECT_NEAR(sol.x.edge_weights[e], 1.0, 1e-7); }
            if (ledger.forced_out(e)) { EXPECT_NEAR(sol.x.edge_weights[e], 0.0, 1e-7); }
        }
    }
}

TEST(SolveLp, SolvableSkeletonGivesIntegralOptimum) {
    for (const auto& inst : test::corpus(30, 3400, 6, 11)) {
        const auto ledger = heur::run_closure(inst);
        if (!heur::skeleton_faces(ledger, inst).solvable) continue;
        const auto sol = lp::solve_to_extreme_point(inst, lp::build_lp(inst));
        const auto cls = lp::classify_solution(inst, sol.x);
        EXPECT_EQ(cls.kind, lp::SolutionKind::Integral);
        EXPECT_NEAR(cls.cost, oracle::brute_force_mwt(inst).cost, 1e-6);
    }
}

TEST(SolveLp, SimplePolygonsAreIntegral) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = geom::random_simple_polygon(5 + seed % 11, 3500 + seed);
        const auto lp = lp::build_polygon_lp(p.instance, p.boundary);
        const auto sol = lp::solve_to_extreme_point(p.instance, lp);
        const auto cls = lp::classify_solution(p.instance, sol.x, 1e-7, p.boundary);
        EXPECT_EQ(cls.kind, lp::SolutionKind::Integral);
        EXPECT_NEAR(sol.x.objective, mwt_polygon(p.instance, p.boundary).total_cost, 1e-6);
    }
}

TEST(Classify, IntegralButOverlappingIsAnError) {
    const auto& sq = test::square();
    lp::FractionalTriangulation x;
    x.weights.assign(sq.triangles().size(), 0.0);
    x.weights[*sq.triangle_with(0, 1, 2)] = 1.0;
    x.weights[*sq.triangle_with(1, 2, 3)] = 1.0;
    lp::derive_edge_weights(sq, x);
    EXPECT_THROW(lp::classify_solution(sq, x), InvariantError);
}

TEST(Interchange, ExportedLpHasStandardSections) {
    const auto& sq = test::square();
    std::ostringstream out;
    lp::export_lp(out, sq, lp::build_lp(sq));
    const auto text = out.str();
    for (const char* s : {"Minimize", "Subject To", "Bounds", "End"}) EXPECT_NE(text.find(s), std::string::npos) << s;
}

TEST(Interchange, SolutionRoundTrip) {
    const auto& k = test::circle13();
    const auto lp = lp::build_lp(k);
    const auto sol = lp::solve_to_extreme_point(k, lp);
    std::stringstream io;
    lp::export_solution(io, k, lp, sol.x);
    const auto back = lp::import_solution(io, k, lp);
    for (TriangleId t = 0; t < k.triangles().size(); ++t) EXPECT_EQ(back.weights[t], sol.x.weights[t]);
    EXPECT_NEAR(back.objective, sol.x.objective, 1e-12);
    std::istringstream bad("t999_999_999 1\n");
    EXPECT_THROW(lp::import_solution(bad, k, lp), ParseError);
}

} // namespace
} // namespace mwt
