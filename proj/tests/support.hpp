#pragma once

// Shared fixtures for the test suite: seeded corpora and naive recounts.

#include "mwt/geometry/generate.hpp"
#include "mwt/geometry/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

namespace mwt::test {

inline const Instance& square() {
    static const Instance i = geom::parse_instance("0 0\n1 0\n1 1\n0 1\n");
    return i;
}

inline const Instance& tri_center() {
    static const Instance i = geom::parse_instance("0 0\n4 0\n2 3\n2 1\n");
    return i;
}

inline const Instance& circle13() {
    static const Instance i = geom::parse_instance(geom::regular_polygon_with_center(13));
    return i;
}

inline Instance convex_ngon(std::size_t n) {
    std::string text;
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(n) + 0.1;
        std::snprintf(buf, sizeof buf, "%.6f %.6f\n", 10.0 * std::cos(a), 10.0 * std::sin(a));
        text += buf;
    }
    return geom::parse_instance(text);
}

// Seeded random instances with n in [lo_n, hi_n].
inline std::vector<Instance> corpus(std::size_t count, std::uint64_t base_seed, std::size_t lo_n, std::size_t hi_n) {
    std::vector<Instance> out;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = lo_n + k % (hi_n - lo_n + 1);
        out.push_back(geom::random_instance(n, base_seed + k));
    }
    return out;
}

// All triples (sorted ids) with positive area and no other point in the
// closed triangle.
inline std::set<std::array<PointId, 3>> naive_empty_triangles(const Instance& inst) {
    std::set<std::array<PointId, 3>> out;
    const auto n = static_cast<PointId>(inst.size());
    for (PointId a = 0; a < n; ++a)
        for (PointId b = a + 1; b < n; ++b)
            for (PointId c = b + 1; c < n; ++c) {
                const int o = inst.orientation(a, b, c);
                if (o == 0) continue;
                bool empty = true;
                for (PointId p = 0; p < n && empty; ++p) {
                    if (p == a || p == b || p == c) continue;
                    const int s1 = inst.orientation(a, b, p) * o;
                    const int s2 = inst.orientation(b, c, p) * o;
                    const int s3 = inst.orientation(c, a, p) * o;
                    empty = !(s1 >= 0 && s2 >= 0 && s3 >= 0);
                }
                if (empty) out.insert({a, b, c});
            }
    return out;
}

inline std::set<std::pair<PointId, PointId>> naive_potential_edges(const Instance& inst) {
    std::set<std::pair<PointId, PointId>> out;
    const auto n = static_cast<PointId>(inst.size());
    for (PointId a = 0; a < n; ++a)
        for (PointId b = a + 1; b < n; ++b) {
            bool blocked = false;
            for (PointId p = 0; p < n && !blocked; ++p) {
                if (p == a || p == b || inst.orientation(a, b, p) != 0) continue;
                const auto A = inst.grid(a), B = inst.grid(b), P = inst.grid(p);
                blocked = std::min(A.x, B.x) <= P.x && P.x <= std::max(A.x, B.x) && std::min(A.y, B.y) <= P.y &&
                          P.y <= std::max(A.y, B.y);
            }
            if (!blocked) out.insert({a, b});
        }
    return out;
}

inline std::array<PointId, 3> sorted_vertices(const Instance& inst, TriangleId t) {
    auto v = inst.triangle(t).v;
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace mwt::test
