#pragma once

// Exact planar predicates on integer grid coordinates.
//
// Input rationals are rescaled to a common denominator when an instance is
// loaded, so every predicate here works on 64-bit integers. Coordinates are
// bounded by kMaxGridCoordinate, which keeps every degree-2 expression
// (cross products, squared distances, doubled areas) well inside __int128.

#include <algorithm>
#include <cstdint>
#include <cstdlib>

namespace mwt::geom {

using Coord = std::int64_t;
using Wide = __int128;

inline constexpr Coord kMaxGridCoordinate = Coord{1} << 40;

struct GridPoint {
    Coord x = 0;
    Coord y = 0;

    friend constexpr bool operator==(GridPoint, GridPoint) = default;
};

constexpr int sign(Wide v) noexcept { return (v > 0) - (v < 0); }

// (b - a) x (c - a)
constexpr Wide cross(GridPoint a, GridPoint b, GridPoint c) noexcept {
    return Wide(b.x - a.x) * Wide(c.y - a.y) - Wide(b.y - a.y) * Wide(c.x - a.x);
}

// (b - a) . (c - a)
constexpr Wide dot(GridPoint a, GridPoint b, GridPoint c) noexcept {
    return Wide(b.x - a.x) * Wide(c.x - a.x) + Wide(b.y - a.y) * Wide(c.y - a.y);
}

// +1 for a counterclockwise turn a -> b -> c, -1 clockwise, 0 collinear.
constexpr int orientation(GridPoint a, GridPoint b, GridPoint c) noexcept {
    return sign(cross(a, b, c));
}

constexpr Wide squared_distance(GridPoint a, GridPoint b) noexcept {
    const Wide dx = Wide(a.x) - Wide(b.x);
    const Wide dy = Wide(a.y) - Wide(b.y);
    return dx * dx + dy * dy;
}

// Lexicographic (x, y) order.
constexpr bool lex_less(GridPoint a, GridPoint b) noexcept {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// p lies in the open segment ab (collinear and strictly between).
constexpr bool on_open_segment(GridPoint a, GridPoint b, GridPoint p) noexcept {
    if (orientation(a, b, p) != 0) return false;
    return dot(p, a, b) < 0;
}

// True iff the open interiors of segments ab and cd intersect. Shared
// endpoints alone do not count; collinear overlap of interiors does.
constexpr bool segments_cross(GridPoint a, GridPoint b, GridPoint c, GridPoint d) noexcept {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 != 0 || o2 != 0) return false;
    if (a == b || c == d) return false;
    // All four collinear: compare open intervals along the dominant axis.
    const bool use_x = a.x != b.x;
    auto key = [use_x](GridPoint p) { return use_x ? p.x : p.y; };
    const Coord lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    const Coord lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
}

// Counterclockwise angular order of direction vectors around the origin,
// starting from the positive x axis. Exact; used to sort edges around a vertex.
constexpr int half_plane(Coord dx, Coord dy) noexcept {
    return (dy < 0 || (dy == 0 && dx < 0)) ? 1 : 0;
}

constexpr bool angle_less(Coord ax, Coord ay, Coord bx, Coord by) noexcept {
    const int ha = half_plane(ax, ay);
    const int hb = half_plane(bx, by);
    if (ha != hb) return ha < hb;
    return Wide(ax) * Wide(by) - Wide(ay) * Wide(bx) > 0;
}

} // namespace mwt::geom
