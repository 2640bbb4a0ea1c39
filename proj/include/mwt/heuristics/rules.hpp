#pragma once

// Edge inclusion/exclusion tests for minimum-weight triangulations.
//
// The beta-skeleton and diamond thresholds are irrational, so those two tests
// compare angles in floating point (from exact cross/dot products) and only
// fire when the condition holds with a margin. YXY and local minimality are
// exact.

#include "mwt/error.hpp"
#include "mwt/geometry/instance.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace mwt::heur {

inline constexpr double kDefaultMargin = 1e-9;

inline double default_beta() { return 1.0 / std::sin(std::numbers::pi / 3.1); }
inline double default_diamond_angle() { return std::numbers::pi / 4.6; }

// Smallest beta for which skeleton membership still implies MWT membership.
inline double min_sound_beta() { return default_beta() * (1.0 - 1e-12); }

namespace detail {

// Angle at vertex o between rays o->a and o->b, in [0, pi].
inline double angle_at(geom::GridPoint o, geom::GridPoint a, geom::GridPoint b) {
    const double c = static_cast<double>(geom::cross(o, a, b));
    const double d = static_cast<double>(geom::dot(o, a, b));
    return std::atan2(std::abs(c), d);
}

} // namespace detail

// True iff no other point z sees e under an angle >= arcsin(1/beta), i.e. both
// open disks of diameter beta*|e| having e as a chord are empty. Abstains
// (returns false) when some angle is within `margin` of the threshold.
inline bool beta_skeleton_test(const Instance& inst, EdgeId e, double beta,
                               double margin = kDefaultMargin) {
    if (!(beta >= min_sound_beta())) throw InputError("beta below 1/sin(pi/3.1)");
    const Edge& edge = inst.edge(e);
    const double threshold = std::asin(1.0 / beta);
    const auto x = inst.grid(edge.u), y = inst.grid(edge.v);
    for (PointId z = 0; z < inst.size(); ++z) {
        if (z == edge.u || z == edge.v) continue;
        if (detail::angle_at(inst.grid(z), x, y) >= threshold - margin) return false;
    }
    return true;
}

// True iff every potential edge pq crossing e = xy satisfies
// |e| <= min(|px|, |py|, |qx|, |qy|). Only crossers with an endpoint closer
// than |e| to x or y can violate this, so only those are examined.
inline bool yxy_test(const Instance& inst, EdgeId e) {
    const Edge& edge = inst.edge(e);
    const auto x = inst.grid(edge.u), y = inst.grid(edge.v);
    const geom::Wide len2 = geom::squared_distance(x, y);
    for (PointId p = 0; p < inst.size(); ++p) {
        if (p == edge.u || p == edge.v) continue;
        const auto gp = inst.grid(p);
        if (geom::squared_distance(gp, x) >= len2 && geom::squared_distance(gp, y) >= len2) continue;
        for (EdgeId f : inst.incident_edges(p))
            if (inst.edges_cross(e, f)) return false;
    }
    return true;
}

// True iff e is excluded: both isosceles triangles with base e and the given
// base angle (one on each side) hold a point in their open interior. Points
// within `margin` of a triangle's slanted sides do not count. Hull edges are
// never excluded.
inline bool diamond_test(const Instance& inst, EdgeId e, double angle,
                         double margin = kDefaultMargin) {
    if (!(angle > 0.0 && angle < std::numbers::pi / 2)) throw InputError("diamond angle out of range");
    const Edge& edge = inst.edge(e);
    if (edge.is_boundary) return false;
    const auto p = inst.grid(edge.u), q = inst.grid(edge.v);
    bool blocked_left = false, blocked_right = false;
    for (PointId z = 0; z < inst.size() && !(blocked_left && blocked_right); ++z) {
        if (z == edge.u || z == edge.v) continue;
        const auto gz = inst.grid(z);
        const int side = geom::orientation(p, q, gz);
        if (side == 0) continue;
        if (side > 0 ? blocked_left : blocked_right) continue;
        if (detail::angle_at(p, q, gz) < angle - margin && detail::angle_at(q, p, gz) < angle - margin)
            (side > 0 ? blocked_left : blocked_right) = true;
    }
    return blocked_left && blocked_right;
}

// Vertex of t not on edge e.
inline PointId apex(const Instance& inst, TriangleId t, EdgeId e) {
    const auto& tri = inst.triangle(t);
    for (int s = 0; s < 3; ++s)
        if (tri.e[s] == e) return tri.v[(s + 2) % 3];
    throw InvariantError("triangle does not contain edge");
}

// Pairs (t, t') on opposite sides of interior edge e such that t and t'
// triangulate t u t' minimally: the quadrilateral is non-convex, or e is no
// longer than its other diagonal.
inline std::vector<std::pair<TriangleId, TriangleId>> locally_minimal_pairs(const Instance& inst,
                                                                            EdgeId e) {
    std::vector<std::pair<TriangleId, TriangleId>> out;
    const Edge& edge = inst.edge(e);
    if (edge.is_boundary) return out;
    const auto u = inst.grid(edge.u), v = inst.grid(edge.v);
    const geom::Wide len2 = geom::squared_distance(u, v);
    for (TriangleId t : inst.triangles_left(e)) {
        const auto a = inst.grid(apex(inst, t, e));
        for (TriangleId s : inst.triangles_right(e)) {
            const auto b = inst.grid(apex(inst, s, e));
            const bool convex = geom::orientation(a, b, u) * geom::orientation(a, b, v) < 0;
            if (!convex || len2 <= geom::squared_distance(a, b)) out.emplace_back(t, s);
        }
    }
    return out;
}

} // namespace mwt::heur
