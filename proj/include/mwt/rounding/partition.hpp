#pragma once

// Convex partitions of an instance and their sensitivity.
//
//   hm   greedy triangulation (ForcedIn edges first when a ledger is given),
//        then Hertel-Mehlhorn merging: drop the longest edge whose two faces
//        merge into a strictly convex face, until none is left.
//   fan  sweep triangulation in lexicographic point order; each new point is
//        joined to every earlier point it can see. No merging.

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/closure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwt::round {

enum class PartitionStrategy { HertelMehlhorn, Fan };

inline std::optional<PartitionStrategy> parse_partition(std::string_view s) {
    if (s == "hm") return PartitionStrategy::HertelMehlhorn;
    if (s == "fan") return PartitionStrategy::Fan;
    return std::nullopt;
}

inline std::string_view to_string(PartitionStrategy s) {
    return s == PartitionStrategy::HertelMehlhorn ? "hm" : "fan";
}

struct ConvexPartition {
    std::vector<EdgeId> edges; // sorted
    std::vector<Face> faces;
    double total_length = 0.0;
};

namespace detail {

inline bool fits(const Instance& inst, const std::vector<EdgeId>& chosen, EdgeId e) {
    for (EdgeId f : chosen)
        if (f == e || inst.edges_cross(e, f)) return false;
    return true;
}

inline std::vector<EdgeId> greedy_triangulation(const Instance& inst, const heur::EdgeStatusLedger* ledger) {
    std::vector<EdgeId> order(inst.edges().size());
    std::iota(order.begin(), order.end(), EdgeId{0});
    auto rank = [&](EdgeId e) {
        if (inst.edge(e).is_boundary) return 0;
        if (ledger && ledger->forced_in(e)) return 1;
        if (ledger && ledger->forced_out(e)) return 3;
        return 2;
    };
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        if (rank(a) != rank(b)) return rank(a) < rank(b);
        const auto la = geom::squared_distance(inst.grid(inst.edge(a).u), inst.grid(inst.edge(a).v));
        const auto lb = geom::squared_distance(inst.grid(inst.edge(b).u), inst.grid(inst.edge(b).v));
        return la != lb ? la < lb : a < b;
    });
    std::vector<EdgeId> chosen;
    for (EdgeId e : order)
        if (fits(inst, chosen, e)) chosen.push_back(e);
    return chosen;
}

inline std::vector<EdgeId> sweep_triangulation(const Instance& inst) {
    std::vector<PointId> order(inst.size());
    std::iota(order.begin(), order.end(), PointId{0});
    std::sort(order.begin(), order.end(),
              [&](PointId a, PointId b) { return geom::lex_less(inst.grid(a), inst.grid(b)); });
    std::vector<EdgeId> chosen;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const PointId p = order[i];
        std::vector<PointId> earlier(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
        std::sort(earlier.begin(), earlier.end(), [&](PointId a, PointId b) {
            const auto da = geom::squared_distance(inst.grid(p), inst.grid(a));
            const auto db = geom::squared_distance(inst.grid(p), inst.grid(b));
            return da != db ? da < db : a < b;
        });
        for (PointId q : earlier) {
            const auto e = inst.edge_between(p, q);
            if (e && fits(inst, chosen, *e)) chosen.push_back(*e);
        }
    }
    return chosen;
}

// Polygon obtained by gluing faces a and b along edge (u, v); empty if they
// do not share it as a single side.
inline std::vector<PointId> glue(const std::vector<PointId>& a, const std::vector<PointId>& b, PointId u, PointId v) {
    auto rotate_to = [](std::vector<PointId> poly, PointId first, PointId second) -> std::vector<PointId> {
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i)
            if (poly[i] == first && poly[(i + 1) % n] == second) {
                std::rotate(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(i), poly.end());
                return poly;
            }
        return {};
    };
    // a runs u -> v along the shared side, b runs v -> u.
    auto ra = rotate_to(a, u, v);
    auto rb = rotate_to(b, v, u);
    if (ra.empty() || rb.empty()) {
        ra = rotate_to(a, v, u);
        rb = rotate_to(b, u, v);
        if (ra.empty() || rb.empty()) return {};
    }
    // ra = [x, y, ...rest of a], rb = [y, x, ...rest of b]; merged walk:
    // y, rest of a..., x, rest of b...
    std::vector<PointId> out;
    out.push_back(ra[1]);
    for (std::size_t i = 2; i < ra.size(); ++i) out.push_back(ra[i]);
    out.push_back(ra[0]);
    for (std::size_t i = 2; i < rb.size(); ++i) out.push_back(rb[i]);
    return out;
}

inline std::vector<EdgeId> hertel_mehlhorn(const Instance& inst, std::vector<EdgeId> edges) {
    while (true) {
        const auto faces = geom::extract_faces(inst, edges);
        std::map<std::pair<PointId, PointId>, std::size_t> owner; // directed side -> face
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto& b = faces[f].boundary;
            for (std::size_t i = 0; i < b.size(); ++i) owner[{b[i], b[(i + 1) % b.size()]}] = f;
        }
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const Edge& e = inst.edge(edges[k]);
            if (e.is_boundary) continue;
            auto fa = owner.find({e.u, e.v});
            auto fb = owner.find({e.v, e.u});
            if (fa == owner.end() || fb == owner.end() || fa->second == fb->second) continue;
            const auto merged = glue(faces[fa->second].boundary, faces[fb->second].boundary, e.u, e.v);
            if (merged.empty() || !geom::is_strictly_convex(inst, merged)) continue;
            if (!best || e.length > inst.edge(edges[*best]).length ||
                (e.length == inst.edge(edges[*best]).length && edges[k] < edges[*best]))
                best = k;
        }
        if (!best) return edges;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(*best));
    }
}

} // namespace detail

// Throws InvariantError naming the first failed property.
inline void validate_partition(const Instance& inst, const ConvexPartition& p) {
    for (EdgeId e : geom::hull_edges(inst))
        if (!std::binary_search(p.edges.begin(), p.edges.end(), e))
            throw InvariantError("partition misses a hull edge");
    geom::Wide area = 0;
    for (const Face& f : p.faces) {
        if (!f.is_convex) throw InvariantError("partition face is not strictly convex");
        if (!f.is_empty) throw InvariantError("partition face is not empty");
        area += inst.polygon_doubled_area(f.boundary);
    }
    if (area != inst.hull_doubled_area()) throw InvariantError("partition faces do not tile the hull");
}

inline ConvexPartition make_partition(const Instance& inst, std::vector<EdgeId> edges) {
    ConvexPartition p;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    p.edges = std::move(edges);
    p.faces = geom::extract_faces(inst, p.edges);
    for (EdgeId e : p.edges) p.total_length += inst.edge(e).length;
    return p;
}

inline ConvexPartition build_convex_partition(const Instance& inst, PartitionStrategy strategy,
                                              const heur::EdgeStatusLedger* ledger = nullptr) {
    std::vector<EdgeId> edges = strategy == PartitionStrategy::HertelMehlhorn
                                    ? detail::hertel_mehlhorn(inst, detail::greedy_triangulation(inst, ledger))
                                    : detail::sweep_triangulation(inst);
    ConvexPartition p = make_partition(inst, std::move(edges));
    validate_partition(inst, p);
    return p;
}

struct SensitivityWitness {
    EdgeId partition_edge = kNone;
    EdgeId crossing_edge = kNone;
    PointId endpoint = kNone;
};

// Smallest sigma making every partition edge sigma-sensitive.
inline double measure_sensitivity(const Instance& inst, const ConvexPartition& p,
                                  SensitivityWitness* witness = nullptr) {
    double sigma = 0.0;
    for (EdgeId e : p.edges) {
        const Edge& pe = inst.edge(e);
        for (EdgeId c = 0; c < inst.edges().size(); ++c) {
            if (!inst.edges_cross(e, c)) continue;
            const Edge& ce = inst.edge(c);
            for (PointId x : {ce.u, ce.v}) {
                const double d = std::min(inst.distance(x, pe.u), inst.distance(x, pe.v));
                const double ratio = d / ce.length;
                if (ratio > sigma) {
                    sigma = ratio;
                    if (witness) *witness = {e, c, x};
                }
            }
        }
    }
    return sigma;
}

} // namespace mwt::round
