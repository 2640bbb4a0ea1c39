#pragma once

// Blankets and transposals of a fractional triangulation into one strictly
// convex empty face f.
//
// Every image vertex is a vertex of f: an empty triangle has no instance
// point in its interior, so the only face vertices inside it are its own.

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/polygon/polygon_dp.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mwt::round {

inline constexpr double kResidualFloor = 1e-10;

// ---- exact incidence tests against a convex face ---------------------------

// True iff the open segment pq meets the interior of the strictly convex
// counterclockwise polygon.
inline bool segment_crosses_interior(const Instance& inst, std::span<const PointId> poly, PointId p, PointId q) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PointId a = poly[i], b = poly[(i + 1) % n];
        if (inst.orientation(a, b, p) <= 0 && inst.orientation(a, b, q) <= 0) return false;
    }
    bool left = false, right = false;
    for (PointId v : poly) {
        const int o = inst.orientation(p, q, v);
        left = left || o > 0;
        right = right || o < 0;
    }
    return left && right;
}

// True iff the interiors of triangle t and the face intersect.
inline bool triangle_crosses_face(const Instance& inst, std::span<const PointId> poly, TriangleId t) {
    const auto& tv = inst.triangle(t).v;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PointId a = poly[i], b = poly[(i + 1) % n];
        if (std::all_of(tv.begin(), tv.end(), [&](PointId v) { return inst.orientation(a, b, v) <= 0; }))
            return false;
    }
    for (int k = 0; k < 3; ++k) {
        const PointId a = tv[k], b = tv[(k + 1) % 3];
        if (std::all_of(poly.begin(), poly.end(), [&](PointId v) { return inst.orientation(a, b, v) <= 0; }))
            return false;
    }
    return true;
}

// ---- edge transposal ---------------------------------------------------------

struct EdgeTransposal {
    EdgeId source = kNone;
    int kind = 0;            // 1: one face vertex + one side, 2: two sides, 3: diagonal
    PointId a = kNone;       // image endpoints; a == b for a point image
    PointId b = kNone;
    double length = 0.0;
    double source_length = 0.0;
    bool degenerate() const { return a == b; }
};

namespace detail {

inline int face_position(std::span<const PointId> poly, PointId p) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (poly[i] == p) return static_cast<int>(i);
    return -1;
}

// Shorter segment first, then the lexicographically smaller (x, y) pair.
inline bool better_pair(const Instance& inst, std::pair<PointId, PointId> x, std::pair<PointId, PointId> y) {
    const auto lx = geom::squared_distance(inst.grid(x.first), inst.grid(x.second));
    const auto ly = geom::squared_distance(inst.grid(y.first), inst.grid(y.second));
    if (lx != ly) return lx < ly;
    auto key = [&](std::pair<PointId, PointId> p) {
        auto g1 = inst.grid(p.first), g2 = inst.grid(p.second);
        if (geom::lex_less(g2, g1)) std::swap(g1, g2);
        return std::array<geom::Coord, 4>{g1.x, g1.y, g2.x, g2.y};
    };
    return key(x) < key(y);
}

} // namespace detail

inline EdgeTransposal transpose_edge(const Instance& inst, const Face& face, EdgeId e) {
    const auto& P = face.boundary;
    const Edge& edge = inst.edge(e);
    if (!segment_crosses_interior(inst, P, edge.u, edge.v))
        throw InputError("edge (" + std::to_string(edge.u) + "," + std::to_string(edge.v) + ") does not cross the face");
    const std::size_t n = P.size();
    std::vector<std::size_t> sides;
    for (std::size_t i = 0; i < n; ++i)
        if (geom::segments_cross(inst.grid(edge.u), inst.grid(edge.v), inst.grid(P[i]), inst.grid(P[(i + 1) % n])))
            sides.push_back(i);

    EdgeTransposal out;
    out.source = e;
    out.source_length = edge.length;
    auto pick = [&](const std::vector<std::pair<PointId, PointId>>& options) {
        auto best = options.front();
        for (const auto& o : options)
            if (detail::better_pair(inst, o, best)) best = o;
        out.a = best.first;
        out.b = best.second;
    };
    if (sides.size() == 2) {
        out.kind = 2;
        const PointId s0 = P[sides[0]], s1 = P[(sides[0] + 1) % n];
        const PointId t0 = P[sides[1]], t1 = P[(sides[1] + 1) % n];
        pick({{s0, t0}, {s0, t1}, {s1, t0}, {s1, t1}});
    } else if (sides.size() == 1) {
        out.kind = 1;
        PointId w = kNone;
        for (PointId p : {edge.u, edge.v})
            if (detail::face_position(P, p) >= 0) w = p;
        if (w == kNone) throw InvariantError("edge crosses one face side but has no face vertex");
        pick({{w, P[sides[0]]}, {w, P[(sides[0] + 1) % n]}});
    } else if (sides.empty()) {
        out.kind = 3;
        out.a = edge.u;
        out.b = edge.v;
    } else {
        throw InvariantError("edge crosses more than two sides of a convex face");
    }
    if (out.a > out.b) std::swap(out.a, out.b);
    out.length = out.degenerate() ? 0.0 : inst.distance(out.a, out.b);
    return out;
}

// ---- triangle transposal ----------------------------------------------------

struct TriangleTransposal {
    TriangleId source = kNone;
    std::vector<PointId> image; // distinct face vertices in face order
    bool positive_area = false;
    std::vector<EdgeTransposal> edges; // transposals of the crossing edges of t
};

inline TriangleTransposal transpose_triangle(const Instance& inst, const Face& face, TriangleId t) {
    const auto& P = face.boundary;
    if (!triangle_crosses_face(inst, P, t)) throw InputError("triangle does not cross the face");
    TriangleTransposal out;
    out.source = t;
    std::vector<char> mark(P.size(), 0);
    for (PointId v : inst.triangle(t).v)
        if (int i = detail::face_position(P, v); i >= 0) mark[i] = 1;
    for (EdgeId e : inst.triangle(t).e) {
        const Edge& edge = inst.edge(e);
        if (!segment_crosses_interior(inst, P, edge.u, edge.v)) continue;
        out.edges.push_back(transpose_edge(inst, face, e));
        for (PointId p : {out.edges.back().a, out.edges.back().b}) {
            const int i = detail::face_position(P, p);
            if (i < 0) throw InvariantError("edge transposal left the face");
            mark[static_cast<std::size_t>(i)] = 1;
        }
    }
    for (std::size_t i = 0; i < P.size(); ++i)
        if (mark[i]) out.image.push_back(P[i]);
    out.positive_area = out.image.size() >= 3;
    return out;
}

// Total edge cost of the image polygon (instance-wide edge costs).
inline double transposal_cost(const Instance& inst, const TriangleTransposal& r) {
    if (!r.positive_area) return 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < r.image.size(); ++i)
        c += inst.segment_cost(r.image[i], r.image[(i + 1) % r.image.size()]);
    return c;
}

// Minimum-weight triangulation of the image; empty for a zero-area image.
inline std::vector<TriangleId> triangulated_transposal(const Instance& inst, const TriangleTransposal& r) {
    if (!r.positive_area) return {};
    return mwt_polygon(inst, std::span<const PointId>(r.image)).triangles;
}

// ---- blankets ------------------------------------------------------------------

struct Blanket {
    std::vector<TriangleId> triangles; // in gluing order
    double weight = 0.0;
};

// Peels x restricted to the triangles crossing `face` into blankets. Each
// blanket starts at the crossing triangle of largest residual weight and is
// glued, across every edge that crosses the face, to the opposite triangle
// of largest residual weight.
inline std::vector<Blanket> decompose_into_blankets(const Instance& inst, const lp::FractionalTriangulation& x,
                                                    const Face& face) {
    const auto& P = face.boundary;
    const std::size_t T = inst.triangles().size();
    std::vector<double> residual(T, 0.0);
    std::vector<char> crossing(T, 0);
    for (TriangleId t = 0; t < T; ++t)
        if (x.weights[t] > kResidualFloor && triangle_crosses_face(inst, P, t)) {
            crossing[t] = 1;
            residual[t] = x.weights[t];
        }
    std::vector<char> edge_crosses(inst.edges().size(), 0);
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        edge_crosses[e] = segment_crosses_interior(inst, P, inst.edge(e).u, inst.edge(e).v);

    auto best_of = [&](auto&& candidates) {
        std::optional<TriangleId> best;
        for (TriangleId t : candidates)
            if (residual[t] > kResidualFloor && (!best || residual[t] > residual[*best])) best = t;
        return best;
    };

    std::vector<Blanket> out;
    for (std::size_t round = 0; round <= T; ++round) {
        std::vector<TriangleId> all(T);
        for (TriangleId t = 0; t < T; ++t) all[t] = t;
        const auto start = best_of(all);
        if (!start) return out;

        Blanket b;
        b.triangles.push_back(*start);
        std::vector<std::pair<TriangleId, EdgeId>> queue{{*start, kNone}};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto [t, via] = queue[head];
            for (EdgeId e : inst.triangle(t).e) {
                if (e == via || !edge_crosses[e]) continue;
                const int side = lp::detail::side_of(inst, t, e);
                std::vector<TriangleId> opposite;
                for (auto list : {inst.triangles_left(e), inst.triangles_right(e)})
                    for (TriangleId s : list)
                        if (s != t && lp::detail::side_of(inst, s, e) == -side) opposite.push_back(s);
                const auto next = best_of(opposite);
                if (!next)
                    throw InvariantError("blanket growth stuck at edge (" + std::to_string(inst.edge(e).u) + "," +
                                         std::to_string(inst.edge(e).v) + "): no positive triangle opposite");
                if (std::find(b.triangles.begin(), b.triangles.end(), *next) != b.triangles.end())
                    throw InvariantError("blanket growth revisited a triangle");
                b.triangles.push_back(*next);
                queue.emplace_back(*next, e);
            }
        }
        b.weight = residual[b.triangles.front()];
        for (TriangleId t : b.triangles) b.weight = std::min(b.weight, residual[t]);
        for (TriangleId t : b.triangles) residual[t] -= b.weight;
        out.push_back(std::move(b));
    }
    throw InvariantError("blanket decomposition exceeded |triangles| iterations");
}

// ---- blanket transposal -------------------------------------------------------

struct BlanketTransposal {
    std::vector<TriangleTransposal> regions; // positive-area images only
    std::vector<std::pair<PointId, PointId>> edge_images;
};

// Transposes every triangle of the blanket. Throws InvariantError when two
// edge images cross or the images do not tile the face.
inline BlanketTransposal transpose_blanket(const Instance& inst, const Face& face, const Blanket& b) {
    BlanketTransposal out;
    for (TriangleId t : b.triangles) {
        auto r = transpose_triangle(inst, face, t);
        for (const auto& e : r.edges)
            if (!e.degenerate()) out.edge_images.emplace_back(e.a, e.b);
        if (r.positive_area) out.regions.push_back(std::move(r));
    }
    std::sort(out.edge_images.begin(), out.edge_images.end());
    out.edge_images.erase(std::unique(out.edge_images.begin(), out.edge_images.end()), out.edge_images.end());
    const auto& im = out.edge_images;
    for (std::size_t i = 0; i < im.size(); ++i)
        for (std::size_t j = i + 1; j < im.size(); ++j)
            if (geom::segments_cross(inst.grid(im[i].first), inst.grid(im[i].second), inst.grid(im[j].first),
                                     inst.grid(im[j].second)))
                throw InvariantError("transposed blanket has crossing edge images");
    geom::Wide area = 0;
    for (const auto& r : out.regions) area += inst.polygon_doubled_area(r.image);
    if (area != inst.polygon_doubled_area(face.boundary))
        throw InvariantError("transposed blanket does not tile the face");
    return out;
}

} // namespace mwt::round
