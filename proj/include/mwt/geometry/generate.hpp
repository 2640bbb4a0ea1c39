#pragma once

// Seeded instance generators. Only std::mt19937_64 output and integer
// arithmetic are used, so a seed gives the same instance on every platform.

#include "mwt/error.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/geometry/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mwt::geom {

namespace detail {

// Uniform integer in [lo, hi] from raw engine output (rejection sampling;
// std::uniform_int_distribution is not portable across standard libraries).
inline long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = rng(); while (r >= limit);
    return lo + static_cast<long long>(r % span);
}

inline bool all_collinear(const std::vector<std::pair<long long, long long>>& pts) {
    for (std::size_t c = 2; c < pts.size(); ++c) {
        const auto [ax, ay] = pts[0];
        const auto [bx, by] = pts[1];
        const auto [cx, cy] = pts[c];
        if ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax) != 0) return false;
    }
    return true;
}

} // namespace detail

// n distinct integer points uniform in [lo, hi]^2, not all collinear.
inline std::vector<std::pair<long long, long long>> random_points(std::size_t n, std::uint64_t seed, long long lo = 0,
                                                                   long long hi = 100) {
    if (n < 3) throw InputError("need at least 3 points");
    const auto side = static_cast<unsigned long long>(hi - lo + 1);
    if (side * side < n) throw InputError("grid too small for " + std::to_string(n) + " points");
    std::mt19937_64 rng(seed);
    while (true) {
        std::vector<std::pair<long long, long long>> pts;
        std::set<std::pair<long long, long long>> seen;
        while (pts.size() < n) {
            std::pair<long long, long long> p{detail::draw(rng, lo, hi), detail::draw(rng, lo, hi)};
            if (seen.insert(p).second) pts.push_back(p);
        }
        if (!detail::all_collinear(pts)) return pts;
    }
}

inline Instance random_instance(std::size_t n, std::uint64_t seed, long long lo = 0, long long hi = 100) {
    const auto pts = random_points(n, seed, lo, hi);
    return Instance::from_integers(pts);
}

struct PolygonInstance {
    Instance instance;
    std::vector<PointId> boundary; // counterclockwise
};

// Random star-shaped simple polygon: random points sorted by angle around
// an interior pivot. Retries until the boundary is simple, no vertex sits on
// another side, and every side is a potential edge.
inline PolygonInstance random_simple_polygon(std::size_t n, std::uint64_t seed, long long lo = 0,
                                             long long hi = 100) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto pts = random_points(n, rng(), lo, hi);
        // Pivot: centroid scaled by n so it stays on the integer grid.
        long long sx = 0, sy = 0;
        for (auto [x, y] : pts) sx += x, sy += y;
        const auto nn = static_cast<long long>(n);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        auto rel = [&](std::size_t i) { return std::pair{pts[i].first * nn - sx, pts[i].second * nn - sy}; };
        bool bad = false;
        for (std::size_t i = 0; i < n; ++i)
            if (rel(i) == std::pair{0LL, 0LL}) bad = true;
        if (bad) continue;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto [ax, ay] = rel(a);
            const auto [bx, by] = rel(b);
            if (angle_less(ax, ay, bx, by)) return true;
            if (angle_less(bx, by, ax, ay)) return false;
            return ax * ax + ay * ay < bx * bx + by * by;
        });
        // Two points on one ray from the pivot make a degenerate boundary.
        for (std::size_t i = 0; i < n && !bad; ++i) {
            const auto [ax, ay] = rel(order[i]);
            const auto [bx, by] = rel(order[(i + 1) % n]);
            bad = ax * by - ay * bx == 0 && ax * bx + ay * by > 0;
        }
        if (bad) continue;

        PolygonInstance out{Instance::from_integers(pts), {}};
        for (std::size_t i : order) out.boundary.push_back(static_cast<PointId>(i));
        const auto& inst = out.instance;
        bool ok = true;
        std::vector<EdgeId> sides;
        for (std::size_t i = 0; i < n && ok; ++i) {
            auto e = inst.edge_between(out.boundary[i], out.boundary[(i + 1) % n]);
            ok = e.has_value();
            if (ok) sides.push_back(*e);
        }
        for (std::size_t i = 0; i < sides.size() && ok; ++i)
            for (std::size_t j = i + 1; j < sides.size() && ok; ++j) ok = !inst.edges_cross(sides[i], sides[j]);
        if (!ok || inst.polygon_doubled_area(out.boundary) <= 0) continue;
        return out;
    }
    throw InputError("could not generate a simple polygon");
}

// Regular k-gon of radius 1 with an extra center point, coordinates rounded
// to `decimals` digits.
inline std::string regular_polygon_with_center(std::size_t k, int decimals = 9) {
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < k; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        std::snprintf(buf, sizeof buf, "%.*f %.*f\n", decimals, std::cos(a), decimals, std::sin(a));
        out += buf;
    }
    out += "0 0\n";
    return out;
}

} // namespace mwt::geom
