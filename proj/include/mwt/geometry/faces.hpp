#pragma once

// Faces of a planar straight-line graph on the instance points.

#include "mwt/error.hpp"
#include "mwt/geometry/instance.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace mwt {

struct Face {
    std::vector<PointId> boundary; // counterclockwise
    bool is_convex = false;        // strictly convex: every turn is a left turn
    bool is_empty = false;         // no instance point strictly inside
    bool is_simple = false;        // boundary walk visits no vertex twice
};

namespace geom {

// Winding-number containment; points on the boundary are not inside.
inline bool strictly_inside(const Instance& inst, std::span<const PointId> poly, PointId p) {
    const GridPoint q = inst.grid(p);
    int winding = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const GridPoint a = inst.grid(poly[i]);
        const GridPoint b = inst.grid(poly[(i + 1) % poly.size()]);
        if (poly[i] == p) return false;
        const int o = orientation(a, b, q);
        if (o == 0 && dot(q, a, b) <= 0) return false; // on the boundary
        if (a.y <= q.y) {
            if (b.y > q.y && o > 0) ++winding;
        } else if (b.y <= q.y && o < 0) {
            --winding;
        }
    }
    return winding != 0;
}

inline bool is_strictly_convex(const Instance& inst, std::span<const PointId> poly) {
    if (poly.size() < 3) return false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const PointId a = poly[i];
        const PointId b = poly[(i + 1) % poly.size()];
        const PointId c = poly[(i + 2) % poly.size()];
        if (inst.orientation(a, b, c) <= 0) return false;
    }
    return true;
}

inline Face make_face(const Instance& inst, std::vector<PointId> boundary) {
    Face f;
    f.boundary = std::move(boundary);
    std::vector<PointId> sorted = f.boundary;
    std::sort(sorted.begin(), sorted.end());
    f.is_simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    f.is_convex = f.is_simple && is_strictly_convex(inst, f.boundary);
    f.is_empty = true;
    for (PointId p = 0; p < inst.size() && f.is_empty; ++p)
        if (strictly_inside(inst, f.boundary, p)) f.is_empty = false;
    return f;
}

// Bounded faces of the PSLG (V, edges). The edge set must be non-crossing;
// a crossing pair raises InputError naming both edges. Faces come out in a
// deterministic order (by their first half-edge).
inline std::vector<Face> extract_faces(const Instance& inst, std::span<const EdgeId> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (inst.edges_cross(edges[i], edges[j])) {
                const Edge& a = inst.edge(edges[i]);
                const Edge& b = inst.edge(edges[j]);
                throw InputError("crossing edges (" + std::to_string(a.u) + "," + std::to_string(a.v) +
                                 ") and (" + std::to_string(b.u) + "," + std::to_string(b.v) + ")");
            }

    const std::size_t n = inst.size();
    std::vector<std::vector<PointId>> around(n);
    std::vector<EdgeId> unique(edges.begin(), edges.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (EdgeId e : unique) {
        around[inst.edge(e).u].push_back(inst.edge(e).v);
        around[inst.edge(e).v].push_back(inst.edge(e).u);
    }
    for (PointId p = 0; p < n; ++p) {
        const GridPoint o = inst.grid(p);
        std::sort(around[p].begin(), around[p].end(), [&](PointId a, PointId b) {
            const GridPoint pa = inst.grid(a), pb = inst.grid(b);
            return angle_less(pa.x - o.x, pa.y - o.y, pb.x - o.x, pb.y - o.y);
        });
    }
    auto slot = [&](PointId at, PointId to) {
        const auto& nb = around[at];
        return static_cast<std::size_t>(std::find(nb.begin(), nb.end(), to) - nb.begin());
    };

    // Half-edges (u -> v) keyed by (u, slot of v around u).
    std::vector<std::vector<char>> visited(n);
    for (PointId p = 0; p < n; ++p) visited[p].assign(around[p].size(), 0);

    std::vector<Face> faces;
    for (PointId u0 = 0; u0 < n; ++u0) {
        for (std::size_t s0 = 0; s0 < around[u0].size(); ++s0) {
            if (visited[u0][s0]) continue;
            std::vector<PointId> walk;
            PointId u = u0;
            std::size_t s = s0;
            while (!visited[u][s]) {
                visited[u][s] = 1;
                walk.push_back(u);
                const PointId v = around[u][s];
                // Next half-edge keeps the face on the left: the neighbour of v
                // just clockwise of u.
                const std::size_t back = slot(v, u);
                const std::size_t deg = around[v].size();
                s = (back + deg - 1) % deg;
                u = v;
            }
            if (inst.polygon_doubled_area(walk) > 0) faces.push_back(make_face(inst, std::move(walk)));
        }
    }
    return faces;
}

inline std::vector<EdgeId> hull_edges(const Instance& inst) {
    std::vector<EdgeId> out;
    const auto hull = inst.hull();
    for (std::size_t i = 0; i < hull.size(); ++i)
        out.push_back(*inst.edge_between(hull[i], hull[(i + 1) % hull.size()]));
    return out;
}

} // namespace geom
} // namespace mwt
