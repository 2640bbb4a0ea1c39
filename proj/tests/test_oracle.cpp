#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/oracle/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace mwt {
namespace {

std::size_t catalan(std::size_t k) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

TEST(Oracle, ConvexPolygonCountsAreCatalan) {
    for (std::size_t n = 4; n <= 9; ++n) {
        const auto set = oracle::enumerate_triangulations(test::convex_ngon(n));
        EXPECT_EQ(set.all.size(), catalan(n - 2)) << n;
    }
}

TEST(Oracle, SmallExamples) {
    const auto sq = oracle::brute_force_mwt(test::square());
    EXPECT_EQ(sq.count, 2u);
    EXPECT_EQ(sq.optima.size(), 2u);
    EXPECT_NEAR(sq.cost, 4 + std::sqrt(2.0), 1e-12);

    const auto tc = oracle::brute_force_mwt(test::tri_center());
    EXPECT_EQ(tc.count, 1u);
    EXPECT_EQ(tc.optima.size(), 1u);

    const auto hex = geom::parse_instance("0 0\n2 0\n3 2\n2 4\n0 4\n-1 2\n");
    const auto h = oracle::brute_force_mwt(hex);
    EXPECT_EQ(h.count, 14u);
    EXPECT_EQ(h.optima.size(), 6u);
}

TEST(Oracle, EveryTriangulationIsAZeroOneLpPoint) {
    for (const auto& inst : test::corpus(15, 4000, 5, 9)) {
        const auto lp = lp::build_lp(inst);
        const auto set = oracle::enumerate_triangulations(inst);
        const std::size_t n = inst.size(), h = inst.hull().size();
        std::set<std::vector<TriangleId>> distinct;
        for (const auto& T : set.all) {
            EXPECT_EQ(T.triangles.size(), 2 * n - h - 2);
            distinct.insert(T.triangles);
            lp::FractionalTriangulation x;
            x.weights.assign(inst.triangles().size(), 0.0);
            for (TriangleId t : T.triangles) x.weights[t] = 1.0;
            EXPECT_EQ(lp::max_residual(lp, x), 0.0);
            EXPECT_TRUE(lp::is_valid_tiling(inst, T.triangles, std::vector<PointId>(inst.hull().begin(), inst.hull().end())));
        }
        EXPECT_EQ(distinct.size(), set.all.size());
    }
}

TEST(Oracle, SizeGuard) {
    const auto big = geom::random_instance(14, 5);
    EXPECT_THROW(oracle::brute_force_mwt(big), SizeGuardError);
    EXPECT_THROW(oracle::brute_force_mwt(big, 17), SizeGuardError);
    EXPECT_NO_THROW(oracle::check_size(big, 14));
}

TEST(Star, KnownValues) {
    EXPECT_NEAR(oracle::min_cost_star(test::square(), 0).cost, 2.0, 1e-12);
    const auto center = oracle::min_cost_star(test::tri_center(), 3);
    EXPECT_NEAR(center.cost, 2 * std::sqrt(5.0) + 2, 1e-12);
    EXPECT_EQ(center.edges.size(), 3u);
}

TEST(Star, DpMatchesSubsetEnumeration) {
    for (const auto& inst : test::corpus(30, 4100, 6, 14))
        for (PointId v = 0; v < inst.size(); ++v) {
            if (inst.incident_edges(v).size() > 16) continue;
            EXPECT_NEAR(oracle::min_cost_star(inst, v).cost, oracle::min_cost_star_exhaustive(inst, v), 1e-9);
        }
}

TEST(Star, EveryTriangulationContainsAStarAtLeastTheMinimum) {
    for (const auto& inst : test::corpus(10, 4200, 6, 9)) {
        const auto set = oracle::enumerate_triangulations(inst);
        for (const auto& T : set.all) {
            const auto edges = oracle::edges_of(inst, T.triangles);
            for (PointId v = 0; v < inst.size(); ++v) {
                double s = 0.0;
                for (EdgeId e : edges)
                    if (inst.edge(e).u == v || inst.edge(e).v == v) s += inst.edge(e).length;
                EXPECT_GE(s, oracle::min_cost_star(inst, v).cost - 1e-9);
            }
        }
    }
}

} // namespace
} // namespace mwt
