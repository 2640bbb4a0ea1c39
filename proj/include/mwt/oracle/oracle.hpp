#pragma once

// Brute-force ground truth for small instances: every triangulation, the
// minimum-weight ones, and minimum-cost stars.

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mwt::oracle {

inline constexpr std::size_t kDefaultSizeGuard = 13;
inline constexpr std::size_t kHardSizeCap = 16;
inline constexpr double kOptimaTolerance = 1e-9;

struct Triangulation {
    std::vector<TriangleId> triangles; // sorted
    double cost = 0.0;
};

struct TriangulationSet {
    std::vector<Triangulation> all;
    std::vector<Triangulation> optima;
};

inline double triangulation_cost(const Instance& inst, std::span<const TriangleId> tris) {
    double c = 0.0;
    for (TriangleId t : tris) c += inst.triangle(t).cost;
    return c;
}

inline void check_size(const Instance& inst, std::size_t guard) {
    if (guard > kHardSizeCap)
        throw SizeGuardError("size guard " + std::to_string(guard) + " exceeds the hard cap of " +
                             std::to_string(kHardSizeCap));
    if (inst.size() > guard)
        throw SizeGuardError("oracle refuses " + std::to_string(inst.size()) + " points (guard " +
                             std::to_string(guard) + ")");
}

namespace detail {

using Mask = std::bitset<128>;

class Enumerator {
public:
    Enumerator(const Instance& inst, const std::function<void(std::span<const TriangleId>)>& visit)
        : inst_(inst), visit_(visit), m_(inst.edges().size()) {
        crossing_.resize(m_);
        for (EdgeId a = 0; a < m_; ++a)
            for (EdgeId b = a + 1; b < m_; ++b)
                if (inst.edges_cross(a, b)) {
                    crossing_[a].set(b);
                    crossing_[b].set(a);
                }
        for (EdgeId e = 0; e < m_; ++e)
            if (inst.edge(e).is_boundary) {
                // Hull edges: the outer side counts as covered.
                const Edge& edge = inst.edge(e);
                bool interior_left = true;
                for (PointId p = 0; p < inst.size(); ++p) {
                    const int o = inst.orientation(edge.u, edge.v, p);
                    if (o != 0) {
                        interior_left = o > 0;
                        break;
                    }
                }
                (interior_left ? right_ : left_).set(e);
                present_.set(e);
            }
    }

    void run() { recurse(); }

private:
    // Smallest directed edge (a, b) with exactly one side covered: the
    // uncovered side is the one to fill. Returns false when none is open.
    bool next_open(EdgeId& edge, int& side) const {
        for (EdgeId e = 0; e < m_; ++e) {
            if (!present_[e]) continue;
            if (left_[e] == right_[e]) continue;
            edge = e;
            side = left_[e] ? -1 : +1;
            return true;
        }
        return false;
    }

    void recurse() {
        EdgeId e;
        int side;
        if (!next_open(e, side)) {
            std::vector<TriangleId> sorted = chosen_;
            std::sort(sorted.begin(), sorted.end());
            visit_(sorted);
            return;
        }
        const Edge& edge = inst_.edge(e);
        auto try_list = [&](std::span<const TriangleId> ts) {
            for (TriangleId t : ts) {
                const auto& tri = inst_.triangle(t);
                PointId apex = kNone;
                for (PointId w : tri.v)
                    if (w != edge.u && w != edge.v) apex = w;
                if (inst_.orientation(edge.u, edge.v, apex) != side) continue;
                if (!compatible(t)) continue;
                apply(t, true);
                chosen_.push_back(t);
                recurse();
                chosen_.pop_back();
                apply(t, false);
            }
        };
        try_list(inst_.triangles_left(e));
        try_list(inst_.triangles_right(e));
    }

    int side_of(TriangleId t, EdgeId e) const {
        const Edge& edge = inst_.edge(e);
        for (PointId w : inst_.triangle(t).v)
            if (w != edge.u && w != edge.v) return inst_.orientation(edge.u, edge.v, w);
        return 0;
    }

    bool compatible(TriangleId t) const {
        for (EdgeId f : inst_.triangle(t).e) {
            if ((side_of(t, f) > 0 ? left_ : right_)[f]) return false;
            if (!present_[f] && (crossing_[f] & present_).any()) return false;
        }
        return true;
    }

    void apply(TriangleId t, bool add) {
        for (EdgeId f : inst_.triangle(t).e) {
            auto& cover = side_of(t, f) > 0 ? left_ : right_;
            cover.set(f, add);
            if (add) {
                if (!present_[f]) added_.push_back(f);
                else added_.push_back(kNone);
                present_.set(f);
            } else {
                const EdgeId was = added_.back();
                added_.pop_back();
                if (was != kNone) present_.reset(was);
            }
        }
    }

    const Instance& inst_;
    const std::function<void(std::span<const TriangleId>)>& visit_;
    std::size_t m_;
    std::vector<Mask> crossing_;
    Mask present_, left_, right_;
    std::vector<EdgeId> added_;
    std::vector<TriangleId> chosen_;
};

} // namespace detail

// Calls `visit` once per triangulation of the instance, with the sorted
// triangle ids. Each triangulation is reached exactly once because the
// recursion always fills the smallest open edge.
inline void for_each_triangulation(const Instance& inst,
                                   const std::function<void(std::span<const TriangleId>)>& visit,
                                   std::size_t guard = kDefaultSizeGuard) {
    check_size(inst, guard);
    if (inst.edges().size() > 128) throw SizeGuardError("too many potential edges for the oracle");
    detail::Enumerator en(inst, visit);
    en.run();
}

inline TriangulationSet enumerate_triangulations(const Instance& inst, std::size_t guard = kDefaultSizeGuard) {
    TriangulationSet set;
    for_each_triangulation(
        inst,
        [&](std::span<const TriangleId> tris) {
            set.all.push_back({std::vector<TriangleId>(tris.begin(), tris.end()), triangulation_cost(inst, tris)});
        },
        guard);
    if (set.all.empty()) throw InvariantError("instance has no triangulation");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : set.all) best = std::min(best, t.cost);
    for (const auto& t : set.all)
        if (t.cost <= best + kOptimaTolerance) set.optima.push_back(t);
    return set;
}

struct MwtResult {
    double cost = 0.0;
    std::vector<Triangulation> optima;
    std::size_t count = 0; // triangulations visited
};

// Streams all triangulations, keeping only those within the tie tolerance
// of the running minimum.
inline MwtResult brute_force_mwt(const Instance& inst, std::size_t guard = kDefaultSizeGuard) {
    MwtResult res;
    res.cost = std::numeric_limits<double>::infinity();
    for_each_triangulation(
        inst,
        [&](std::span<const TriangleId> tris) {
            ++res.count;
            const double c = triangulation_cost(inst, tris);
            if (c > res.cost + kOptimaTolerance) return;
            if (c < res.cost - kOptimaTolerance) {
                std::erase_if(res.optima, [&](const Triangulation& t) { return t.cost > c + kOptimaTolerance; });
            }
            res.cost = std::min(res.cost, c);
            res.optima.push_back({std::vector<TriangleId>(tris.begin(), tris.end()), c});
        },
        guard);
    if (res.count == 0) throw InvariantError("instance has no triangulation");
    std::erase_if(res.optima, [&](const Triangulation& t) { return t.cost > res.cost + kOptimaTolerance; });
    return res;
}

inline std::vector<EdgeId> edges_of(const Instance& inst, std::span<const TriangleId> tris) {
    std::vector<EdgeId> out;
    for (TriangleId t : tris) out.insert(out.end(), inst.triangle(t).e.begin(), inst.triangle(t).e.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- stars -----------------------------------------------------------------

struct Star {
    PointId center = kNone;
    std::vector<EdgeId> edges; // counterclockwise around the center
    double cost = 0.0;
};

namespace detail {

inline std::vector<EdgeId> edges_by_angle(const Instance& inst, PointId v) {
    std::vector<EdgeId> es(inst.incident_edges(v).begin(), inst.incident_edges(v).end());
    const auto o = inst.grid(v);
    std::sort(es.begin(), es.end(), [&](EdgeId a, EdgeId b) {
        const auto pa = inst.grid(inst.other_endpoint(a, v));
        const auto pb = inst.grid(inst.other_endpoint(b, v));
        return geom::angle_less(pa.x - o.x, pa.y - o.y, pb.x - o.x, pb.y - o.y);
    });
    return es;
}

// Counterclockwise turn from edge a to edge b around v is below 180 degrees.
inline bool gap_ok(const Instance& inst, PointId v, EdgeId a, EdgeId b) {
    return inst.orientation(v, inst.other_endpoint(a, v), inst.other_endpoint(b, v)) > 0;
}

inline Star boundary_star(const Instance& inst, PointId v) {
    Star s;
    s.center = v;
    const auto hull = inst.hull();
    const std::size_t h = hull.size();
    for (std::size_t i = 0; i < h; ++i)
        if (hull[i] == v) {
            s.edges.push_back(*inst.edge_between(v, hull[(i + 1) % h]));
            s.edges.push_back(*inst.edge_between(hull[(i + h - 1) % h], v));
        }
    for (EdgeId e : s.edges) s.cost += inst.edge(e).length;
    return s;
}

} // namespace detail

// Minimum-length star at v. Hull vertices take their two hull edges. For an
// interior vertex, a circular DP over the incident edges in angular order
// picks the cheapest subset whose consecutive gaps are all below 180 degrees.
inline Star min_cost_star(const Instance& inst, PointId v) {
    if (inst.on_hull(v)) return detail::boundary_star(inst, v);
    const auto es = detail::edges_by_angle(inst, v);
    const std::size_t k = es.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    double best = inf;
    std::vector<EdgeId> best_edges;
    for (std::size_t s = 0; s < k; ++s) {
        // Chains starting at es[s], using only edges after it in angular order.
        std::vector<double> dp(k, inf);
        std::vector<std::size_t> prev(k, k);
        dp[s] = inst.edge(es[s]).length;
        for (std::size_t j = s + 1; j < k; ++j)
            for (std::size_t i = s; i < j; ++i)
                if (dp[i] < inf && detail::gap_ok(inst, v, es[i], es[j])) {
                    const double c = dp[i] + inst.edge(es[j]).length;
                    if (c < dp[j]) {
                        dp[j] = c;
                        prev[j] = i;
                    }
                }
        for (std::size_t j = s + 1; j < k; ++j) {
            if (dp[j] == inf || !detail::gap_ok(inst, v, es[j], es[s])) continue;
            if (dp[j] < best) {
                best = dp[j];
                best_edges.clear();
                for (std::size_t i = j; i != k; i = prev[i]) best_edges.push_back(es[i]);
                std::reverse(best_edges.begin(), best_edges.end());
            }
        }
    }
    if (best == inf)
        throw InvariantError("interior vertex " + std::to_string(v) + " has all edges in a half-plane");
    return {v, best_edges, best};
}

// Subset enumeration; for cross-checking the DP on low-degree vertices.
inline double min_cost_star_exhaustive(const Instance& inst, PointId v) {
    if (inst.on_hull(v)) return detail::boundary_star(inst, v).cost;
    const auto es = detail::edges_by_angle(inst, v);
    const std::size_t k = es.size();
    if (k > 20) throw SizeGuardError("too many incident edges for subset enumeration");
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<EdgeId> pick;
        double c = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                pick.push_back(es[i]);
                c += inst.edge(es[i]).length;
            }
        if (pick.size() < 3 || c >= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < pick.size() && ok; ++i)
            ok = detail::gap_ok(inst, v, pick[i], pick[(i + 1) % pick.size()]);
        if (ok) best = c;
    }
    return best;
}

} // namespace mwt::oracle
