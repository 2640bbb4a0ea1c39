#pragma once

// The MWT instance model: points with exact coordinates, the convex hull
// boundary, and the catalogs of potential edges and empty triangles that
// every other module consumes.

#include "mwt/error.hpp"
#include "mwt/geometry/predicates.hpp"
#include "mwt/geometry/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mwt {

using PointId = std::uint32_t;
using EdgeId = std::uint32_t;
using TriangleId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Point {
    geom::Rational x;
    geom::Rational y;
    geom::GridPoint grid; // x, y times the instance's common denominator
    PointId id = 0;
};

struct Edge {
    PointId u = 0; // u < v
    PointId v = 0;
    double length = 0.0;
    bool is_boundary = false;

    // |e| on the hull boundary, |e|/2 inside: interior edges are shared by
    // two triangles of any triangulation.
    double cost() const noexcept { return is_boundary ? length : 0.5 * length; }
};

struct EmptyTriangle {
    std::array<PointId, 3> v{};  // counterclockwise
    std::array<EdgeId, 3> e{};   // e[k] joins v[k] and v[(k + 1) % 3]
    double cost = 0.0;
};

namespace geom {

// Points collinear with the hull and lying on it are kept as hull vertices.
// Result is counterclockwise, starting at the lexicographically smallest point.
inline std::vector<PointId> convex_hull(std::span<const GridPoint> pts) {
    const std::size_t n = pts.size();
    std::vector<PointId> order(n);
    std::iota(order.begin(), order.end(), PointId{0});
    std::sort(order.begin(), order.end(),
              [&](PointId a, PointId b) { return lex_less(pts[a], pts[b]); });

    std::vector<PointId> strict;
    strict.reserve(2 * n);
    auto build = [&](auto first, auto last) {
        const std::size_t base = strict.size();
        for (auto it = first; it != last; ++it) {
            while (strict.size() >= base + 2 &&
                   orientation(pts[strict[strict.size() - 2]], pts[strict.back()], pts[*it]) <= 0)
                strict.pop_back();
            strict.push_back(*it);
        }
        strict.pop_back();
    };
    build(order.begin(), order.end());
    build(order.rbegin(), order.rend());

    std::vector<PointId> hull;
    for (std::size_t i = 0; i < strict.size(); ++i) {
        const PointId a = strict[i];
        const PointId b = strict[(i + 1) % strict.size()];
        hull.push_back(a);
        std::vector<PointId> between;
        for (PointId p = 0; p < n; ++p)
            if (on_open_segment(pts[a], pts[b], pts[p])) between.push_back(p);
        std::sort(between.begin(), between.end(), [&](PointId p, PointId q) {
            return squared_distance(pts[a], pts[p]) < squared_distance(pts[a], pts[q]);
        });
        hull.insert(hull.end(), between.begin(), between.end());
    }
    return hull;
}

inline double length(GridPoint a, GridPoint b, double scale) {
    return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y)) / scale;
}

// All point pairs whose open segment contains no third point.
inline std::vector<Edge> enumerate_potential_edges(std::span<const GridPoint> pts,
                                                   std::span<const PointId> hull,
                                                   double scale) {
    const std::size_t n = pts.size();
    std::vector<std::uint8_t> boundary(n * n, 0);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const PointId a = hull[i], b = hull[(i + 1) % hull.size()];
        boundary[a * n + b] = boundary[b * n + a] = 1;
    }
    std::vector<Edge> edges;
    for (PointId u = 0; u < n; ++u) {
        for (PointId v = u + 1; v < n; ++v) {
            bool blocked = false;
            for (PointId w = 0; w < n && !blocked; ++w)
                blocked = w != u && w != v && on_open_segment(pts[u], pts[v], pts[w]);
            if (blocked) continue;
            edges.push_back(Edge{u, v, length(pts[u], pts[v], scale), boundary[u * n + v] != 0});
        }
    }
    return edges;
}

// The empty triangles: counterclockwise triples with positive area and no
// other point in the closed triangle. A point on a side blocks that side from
// being a potential edge, so only strict interiors need checking once all
// three sides are known to be potential edges.
//
// edge_index maps u * n + v (either order) to an EdgeId or kNone.
inline std::vector<EmptyTriangle> enumerate_empty_triangles(std::span<const GridPoint> pts,
                                                            std::span<const Edge> edges,
                                                            std::span<const EdgeId> edge_index) {
    const std::size_t n = pts.size();
    std::vector<EmptyTriangle> out;
    for (PointId i = 0; i < n; ++i) {
        for (PointId j = i + 1; j < n; ++j) {
            const EdgeId eij = edge_index[i * n + j];
            if (eij == kNone) continue;
            for (PointId k = j + 1; k < n; ++k) {
                const EdgeId ejk = edge_index[j * n + k];
                const EdgeId eik = edge_index[i * n + k];
                if (ejk == kNone || eik == kNone) continue;
                const int o = orientation(pts[i], pts[j], pts[k]);
                if (o == 0) continue;
                std::array<PointId, 3> v = o > 0 ? std::array<PointId, 3>{i, j, k}
                                                 : std::array<PointId, 3>{i, k, j};
                const GridPoint a = pts[v[0]], b = pts[v[1]], c = pts[v[2]];
                const Coord xmin = std::min({a.x, b.x, c.x}), xmax = std::max({a.x, b.x, c.x});
                const Coord ymin = std::min({a.y, b.y, c.y}), ymax = std::max({a.y, b.y, c.y});
                bool empty = true;
                for (PointId m = 0; m < n && empty; ++m) {
                    const GridPoint p = pts[m];
                    if (p.x <= xmin || p.x >= xmax || p.y <= ymin || p.y >= ymax) continue;
                    if (orientation(a, b, p) > 0 && orientation(b, c, p) > 0 &&
                        orientation(c, a, p) > 0)
                        empty = false;
                }
                if (!empty) continue;
                EmptyTriangle t;
                t.v = v;
                for (int s = 0; s < 3; ++s) {
                    const PointId p = v[s], q = v[(s + 1) % 3];
                    t.e[s] = edge_index[p * n + q];
                    t.cost += edges[t.e[s]].cost();
                }
                out.push_back(t);
            }
        }
    }
    return out;
}

} // namespace geom

class Instance {
public:
    // Throws InputError for fewer than three points, duplicates, an all
    // collinear set, or coordinates outside the exact kernel's range.
    static Instance from_rationals(std::vector<std::pair<geom::Rational, geom::Rational>> coords) {
        using geom::BigInt;
        if (coords.size() < 3) throw InputError("an instance needs at least 3 points");
        BigInt scale = 1;
        for (const auto& [x, y] : coords) {
            for (const auto* r : {&x, &y}) {
                const BigInt d = boost::multiprecision::denominator(*r);
                scale = scale / boost::multiprecision::gcd(scale, d) * d;
            }
        }
        const BigInt limit = BigInt(geom::kMaxGridCoordinate);
        Instance inst;
        inst.scale_ = scale;
        inst.scale_d_ = scale.convert_to<double>();
        inst.points_.reserve(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            auto& [x, y] = coords[i];
            const BigInt gx = boost::multiprecision::numerator(x) *
                              (scale / boost::multiprecision::denominator(x));
            const BigInt gy = boost::multiprecision::numerator(y) *
                              (scale / boost::multiprecision::denominator(y));
            if (abs(gx) > limit || abs(gy) > limit)
                throw InputError("point " + std::to_string(i) +
                                 ": coordinates exceed the exact kernel range after "
                                 "scaling to a common denominator");
            Point p;
            p.x = std::move(x);
            p.y = std::move(y);
            p.grid = {gx.convert_to<geom::Coord>(), gy.convert_to<geom::Coord>()};
            p.id = static_cast<PointId>(i);
            inst.points_.push_back(std::move(p));
        }
        inst.build();
        return inst;
    }

    static Instance from_integers(std::span<const std::pair<long long, long long>> coords) {
        std::vector<std::pair<geom::Rational, geom::Rational>> r;
        r.reserve(coords.size());
        for (auto [x, y] : coords) r.emplace_back(geom::Rational(x), geom::Rational(y));
        return from_rationals(std::move(r));
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Point> points() const noexcept { return points_; }
    const Point& point(PointId p) const { return points_[p]; }
    geom::GridPoint grid(PointId p) const { return points_[p].grid; }
    std::span<const geom::GridPoint> grid_points() const noexcept { return grid_; }

    // Counterclockwise; includes collinear points on hull edges.
    std::span<const PointId> hull() const noexcept { return hull_; }
    bool on_hull(PointId p) const { return on_hull_[p] != 0; }

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const EmptyTriangle> triangles() const noexcept { return triangles_; }
    const EmptyTriangle& triangle(TriangleId t) const { return triangles_[t]; }

    std::optional<EdgeId> edge_between(PointId a, PointId b) const {
        const EdgeId e = edge_index_[a * size() + b];
        if (e == kNone) return std::nullopt;
        return e;
    }

    std::optional<TriangleId> triangle_with(PointId a, PointId b, PointId c) const {
        auto it = triangle_index_.find(triangle_key(a, b, c));
        if (it == triangle_index_.end()) return std::nullopt;
        return it->second;
    }

    // Triangles having e as a side. "Left" is the side where
    // orientation(u, v, w) > 0 for an interior edge; for a hull edge it is
    // the interior side and "right" is empty.
    std::span<const TriangleId> triangles_left(EdgeId e) const { return left_[e]; }
    std::span<const TriangleId> triangles_right(EdgeId e) const { return right_[e]; }

    // Edges incident to p, in no particular order.
    std::span<const EdgeId> incident_edges(PointId p) const { return incident_[p]; }

    PointId other_endpoint(EdgeId e, PointId p) const {
        return edges_[e].u == p ? edges_[e].v : edges_[e].u;
    }

    int orientation(PointId a, PointId b, PointId c) const {
        return geom::orientation(grid_[a], grid_[b], grid_[c]);
    }

    bool edges_cross(EdgeId a, EdgeId b) const {
        const Edge& e = edges_[a];
        const Edge& f = edges_[b];
        return geom::segments_cross(grid_[e.u], grid_[e.v], grid_[f.u], grid_[f.v]);
    }

    double distance(PointId a, PointId b) const { return geom::length(grid_[a], grid_[b], scale_d_); }

    // Cost of segment ab under the edge-cost convention.
    double segment_cost(PointId a, PointId b) const {
        const double len = distance(a, b);
        if (auto e = edge_between(a, b); e && edges_[*e].is_boundary) return len;
        return 0.5 * len;
    }

    // Doubled signed area, in grid units.
    geom::Wide doubled_area(PointId a, PointId b, PointId c) const {
        return geom::cross(grid_[a], grid_[b], grid_[c]);
    }

    geom::Wide hull_doubled_area() const { return polygon_doubled_area(hull_); }

    geom::Wide polygon_doubled_area(std::span<const PointId> poly) const {
        geom::Wide a = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const auto p = grid_[poly[i]];
            const auto q = grid_[poly[(i + 1) % poly.size()]];
            a += geom::Wide(p.x) * q.y - geom::Wide(q.x) * p.y;
        }
        return a;
    }

    const geom::BigInt& scale() const noexcept { return scale_; }
    double scale_as_double() const noexcept { return scale_d_; }

    std::pair<double, double> to_double(PointId p) const {
        return {static_cast<double>(grid_[p].x) / scale_d_, static_cast<double>(grid_[p].y) / scale_d_};
    }

private:
    Instance() = default;

    static std::uint64_t triangle_key(PointId a, PointId b, PointId c) {
        std::array<std::uint64_t, 3> k{a, b, c};
        std::sort(k.begin(), k.end());
        return (k[0] << 42) | (k[1] << 21) | k[2];
    }

    void build() {
        const std::size_t n = points_.size();
        if (n >= (std::size_t{1} << 21)) throw InputError("too many points");
        grid_.reserve(n);
        for (const auto& p : points_) grid_.push_back(p.grid);

        std::vector<PointId> sorted(n);
        std::iota(sorted.begin(), sorted.end(), PointId{0});
        std::sort(sorted.begin(), sorted.end(),
                  [&](PointId a, PointId b) { return geom::lex_less(grid_[a], grid_[b]); });
        for (std::size_t i = 1; i < n; ++i)
            if (grid_[sorted[i]] == grid_[sorted[i - 1]])
                throw InputError("duplicate point: points " + std::to_string(sorted[i - 1]) +
                                 " and " + std::to_string(sorted[i]));
        bool collinear = true;
        for (PointId c = 2; c < n && collinear; ++c)
            collinear = geom::orientation(grid_[0], grid_[1], grid_[c]) == 0;
        if (collinear) throw InputError("all points are collinear");

        hull_ = geom::convex_hull(grid_);
        on_hull_.assign(n, 0);
        for (PointId p : hull_) on_hull_[p] = 1;

        edges_ = geom::enumerate_potential_edges(grid_, hull_, scale_d_);
        edge_index_.assign(n * n, kNone);
        incident_.assign(n, {});
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            edge_index_[edges_[e].u * n + edges_[e].v] = e;
            edge_index_[edges_[e].v * n + edges_[e].u] = e;
            incident_[edges_[e].u].push_back(e);
            incident_[edges_[e].v].push_back(e);
        }

        triangles_ = geom::enumerate_empty_triangles(grid_, edges_, edge_index_);
        left_.assign(edges_.size(), {});
        right_.assign(edges_.size(), {});
        triangle_index_.reserve(triangles_.size() * 2);
        for (TriangleId t = 0; t < triangles_.size(); ++t) {
            const auto& tri = triangles_[t];
            triangle_index_.emplace(triangle_key(tri.v[0], tri.v[1], tri.v[2]), t);
            for (int s = 0; s < 3; ++s) {
                const EdgeId e = tri.e[s];
                const PointId w = tri.v[(s + 2) % 3];
                const Edge& edge = edges_[e];
                if (edge.is_boundary || geom::orientation(grid_[edge.u], grid_[edge.v], grid_[w]) > 0)
                    left_[e].push_back(t);
                else
                    right_[e].push_back(t);
            }
        }
    }

    std::vector<Point> points_;
    std::vector<geom::GridPoint> grid_;
    geom::BigInt scale_ = 1;
    double scale_d_ = 1.0;
    std::vector<PointId> hull_;
    std::vector<std::uint8_t> on_hull_;
    std::vector<Edge> edges_;
    std::vector<EdgeId> edge_index_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<EmptyTriangle> triangles_;
    std::unordered_map<std::uint64_t, TriangleId> triangle_index_;
    std::vector<std::vector<TriangleId>> left_;
    std::vector<std::vector<TriangleId>> right_;
};

} // namespace mwt
