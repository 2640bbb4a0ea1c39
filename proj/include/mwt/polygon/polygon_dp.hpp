#pragma once

// Minimum-weight triangulation of an empty simple polygon on instance points,
// by the cubic interval DP. Works for non-convex polygons: a chord is usable
// only if it is a potential edge, crosses no polygon side, and leaves its
// first endpoint into the polygon interior.
//
// Among equal-cost optima the sorted list of diagonals (as (lo, hi) id pairs)
// is lexicographically smallest.

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mwt {

struct PolygonTriangulation {
    std::vector<PointId> boundary; // counterclockwise
    std::vector<TriangleId> triangles;
    std::vector<EdgeId> diagonals; // sorted by endpoint pair
    double total_cost = 0.0;       // sum of c(t), instance-wide edge costs
};

namespace poly {

inline bool cost_tie(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Throws InputError unless `boundary` is a simple polygon whose sides are
// potential edges. Returns the boundary in counterclockwise order.
inline std::vector<PointId> normalize_polygon(const Instance& inst, std::span<const PointId> boundary) {
    const std::size_t n = boundary.size();
    if (n < 3) throw InputError("polygon needs at least 3 vertices");
    std::vector<PointId> sorted(boundary.begin(), boundary.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("polygon boundary repeats a vertex");
    std::vector<EdgeId> sides(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto e = inst.edge_between(boundary[i], boundary[(i + 1) % n]);
        if (!e) throw InputError("polygon side is not a potential edge");
        sides[i] = *e;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (inst.edges_cross(sides[i], sides[j])) throw InputError("polygon boundary self-intersects");
    std::vector<PointId> out(boundary.begin(), boundary.end());
    const auto area = inst.polygon_doubled_area(out);
    if (area == 0) throw InputError("polygon has zero area");
    if (area < 0) std::reverse(out.begin(), out.end());
    return out;
}

// Chord validity table for a counterclockwise simple polygon.
inline std::vector<std::vector<char>> chord_table(const Instance& inst, std::span<const PointId> poly) {
    const std::size_t n = poly.size();
    std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
    std::vector<EdgeId> sides(n);
    for (std::size_t i = 0; i < n; ++i) sides[i] = *inst.edge_between(poly[i], poly[(i + 1) % n]);
    for (std::size_t i = 0; i < n; ++i) {
        ok[i][(i + 1) % n] = ok[(i + 1) % n][i] = 1;
        const PointId a = poly[i], prev = poly[(i + n - 1) % n], next = poly[(i + 1) % n];
        const int turn = inst.orientation(prev, a, next);
        for (std::size_t k = i + 2; k < n; ++k) {
            if (i == 0 && k == n - 1) continue;
            const PointId b = poly[k];
            auto e = inst.edge_between(a, b);
            if (!e) continue;
            const bool left_of_next = inst.orientation(a, next, b) > 0;
            const bool left_of_prev = inst.orientation(prev, a, b) > 0;
            const bool in_cone = turn > 0 ? (left_of_next && left_of_prev)
                                 : turn < 0 ? (left_of_next || left_of_prev)
                                            : left_of_prev;
            if (!in_cone) continue;
            bool crosses = false;
            for (std::size_t s = 0; s < n && !crosses; ++s) crosses = inst.edges_cross(*e, sides[s]);
            if (!crosses) ok[i][k] = ok[k][i] = 1;
        }
    }
    return ok;
}

namespace detail {

struct Dp {
    std::size_t n = 0;
    std::vector<double> cost;   // n*n, +inf when infeasible
    std::vector<int> apex;      // n*n
    std::vector<int> ways;      // optimal solution count, saturating at 2
    double& c(std::size_t i, std::size_t k) { return cost[i * n + k]; }
    int& a(std::size_t i, std::size_t k) { return apex[i * n + k]; }
    int& w(std::size_t i, std::size_t k) { return ways[i * n + k]; }
};

inline Dp run_dp(const Instance& inst, std::span<const PointId> poly,
                 const std::vector<std::vector<char>>& usable) {
    const std::size_t n = poly.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    Dp dp;
    dp.n = n;
    dp.cost.assign(n * n, inf);
    dp.apex.assign(n * n, -1);
    dp.ways.assign(n * n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dp.c(i, i + 1) = 0.0;
        dp.w(i, i + 1) = 1;
    }
    for (std::size_t len = 2; len < n; ++len) {
        for (std::size_t i = 0; i + len < n; ++i) {
            const std::size_t k = i + len;
            if (!usable[i][k]) continue;
            double best = inf;
            int best_j = -1, ways = 0;
            for (std::size_t j = i + 1; j < k; ++j) {
                if (!usable[i][j] || !usable[j][k]) continue;
                const double left = dp.c(i, j), right = dp.c(j, k);
                if (left == inf || right == inf) continue;
                if (inst.orientation(poly[i], poly[j], poly[k]) <= 0) continue;
                const auto t = inst.triangle_with(poly[i], poly[j], poly[k]);
                if (!t) continue;
                const double value = left + right + inst.triangle(*t).cost;
                const int count = std::min(2, dp.w(i, j) * dp.w(j, k));
                if (best_j >= 0 && cost_tie(value, best)) {
                    ways = std::min(2, ways + count);
                } else if (value < best) {
                    best = value;
                    best_j = static_cast<int>(j);
                    ways = count;
                }
            }
            dp.c(i, k) = best;
            dp.a(i, k) = best_j;
            dp.w(i, k) = ways;
        }
    }
    return dp;
}

inline void collect(const Instance& inst, std::span<const PointId> poly, Dp& dp, std::size_t i,
                    std::size_t k, PolygonTriangulation& out) {
    if (k <= i + 1) return;
    const auto j = static_cast<std::size_t>(dp.a(i, k));
    out.triangles.push_back(*inst.triangle_with(poly[i], poly[j], poly[k]));
    if (j > i + 1) out.diagonals.push_back(*inst.edge_between(poly[i], poly[j]));
    if (k > j + 1) out.diagonals.push_back(*inst.edge_between(poly[j], poly[k]));
    collect(inst, poly, dp, i, j, out);
    collect(inst, poly, dp, j, k, out);
}

inline bool edge_less(const Instance& inst, EdgeId a, EdgeId b) {
    const Edge &x = inst.edge(a), &y = inst.edge(b);
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
}

} // namespace detail

} // namespace poly

// Minimum-cost triangulation of the polygon `boundary`, which must be simple
// and contain no instance point strictly inside.
inline PolygonTriangulation mwt_polygon(const Instance& inst, std::span<const PointId> boundary) {
    PolygonTriangulation out;
    out.boundary = poly::normalize_polygon(inst, boundary);
    const auto& P = out.boundary;
    for (PointId p = 0; p < inst.size(); ++p)
        if (geom::strictly_inside(inst, P, p))
            throw InputError("polygon is not empty: point " + std::to_string(p) + " inside");

    const std::size_t n = P.size();
    auto usable = poly::chord_table(inst, P);
    auto dp = poly::detail::run_dp(inst, P, usable);
    if (!std::isfinite(dp.c(0, n - 1))) throw InvariantError("polygon admits no triangulation");
    const double optimum = dp.c(0, n - 1);

    if (dp.w(0, n - 1) > 1) {
        // Several optima: build the lexicographically smallest diagonal list
        // greedily. A chord is in some optimum together with the chosen ones
        // iff the DP with their crossers disabled still reaches the optimum.
        std::vector<std::pair<std::size_t, std::size_t>> chords;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 2; k < n; ++k)
                if (usable[i][k] && !(i == 0 && k == n - 1)) chords.emplace_back(i, k);
        auto id_pair = [&](std::pair<std::size_t, std::size_t> c) {
            return std::minmax(P[c.first], P[c.second]);
        };
        std::sort(chords.begin(), chords.end(), [&](auto x, auto y) { return id_pair(x) < id_pair(y); });
        auto cross = [&](std::pair<std::size_t, std::size_t> x, std::pair<std::size_t, std::size_t> y) {
            return inst.edges_cross(*inst.edge_between(P[x.first], P[x.second]),
                                    *inst.edge_between(P[y.first], P[y.second]));
        };
        auto allowed = usable;
        for (auto c : chords) {
            if (!allowed[c.first][c.second]) continue;
            auto trial = allowed;
            for (auto d : chords)
                if (d != c && trial[d.first][d.second] && cross(c, d)) trial[d.first][d.second] = trial[d.second][d.first] = 0;
            auto trial_dp = poly::detail::run_dp(inst, P, trial);
            if (std::isfinite(trial_dp.c(0, n - 1)) && poly::cost_tie(trial_dp.c(0, n - 1), optimum)) {
                allowed = std::move(trial);
                dp = std::move(trial_dp);
            }
        }
    }

    poly::detail::collect(inst, P, dp, 0, n - 1, out);
    std::sort(out.diagonals.begin(), out.diagonals.end(),
              [&](EdgeId a, EdgeId b) { return poly::detail::edge_less(inst, a, b); });
    std::sort(out.triangles.begin(), out.triangles.end());
    out.total_cost = 0.0;
    for (TriangleId t : out.triangles) out.total_cost += inst.triangle(t).cost;
    return out;
}

inline PolygonTriangulation mwt_polygon(const Instance& inst, const Face& face) {
    if (!face.is_simple) throw InputError("face boundary is not simple");
    if (!face.is_empty) throw InputError("face is not empty");
    return mwt_polygon(inst, std::span<const PointId>(face.boundary));
}

// Checks that `tri` tiles its polygon: areas add up, every diagonal is used
// by exactly two triangles and every side by exactly one, nothing crosses.
inline bool verify_polygon_triangulation(const Instance& inst, const PolygonTriangulation& tri) {
    const auto& P = tri.boundary;
    if (tri.triangles.size() + 2 != P.size()) return false;
    geom::Wide area = 0;
    std::vector<int> uses(inst.edges().size(), 0);
    for (TriangleId t : tri.triangles) {
        const auto& T = inst.triangle(t);
        area += inst.doubled_area(T.v[0], T.v[1], T.v[2]);
        for (EdgeId e : T.e) ++uses[e];
    }
    if (area != inst.polygon_doubled_area(P)) return false;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const EdgeId s = *inst.edge_between(P[i], P[(i + 1) % P.size()]);
        if (uses[s] != 1) return false;
        uses[s] = 0;
    }
    for (EdgeId d : tri.diagonals) {
        if (uses[d] != 2) return false;
        uses[d] = 0;
    }
    if (std::any_of(uses.begin(), uses.end(), [](int u) { return u != 0; })) return false;
    for (std::size_t i = 0; i < tri.diagonals.size(); ++i)
        for (std::size_t j = i + 1; j < tri.diagonals.size(); ++j)
            if (inst.edges_cross(tri.diagonals[i], tri.diagonals[j])) return false;
    return true;
}

} // namespace mwt
