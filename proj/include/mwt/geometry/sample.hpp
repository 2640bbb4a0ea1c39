#pragma once

// Exact interior sample points. A sample is a positive integer combination
// of three instance points, so orientation tests against it reduce to a
// weighted sum of vertex orientations and stay exact.

#include "mwt/geometry/instance.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace mwt::geom {

struct SamplePoint {
    std::array<PointId, 3> v{};
    std::array<std::int64_t, 3> w{}; // all >= 1, at most 2^20
};

// Sign of cross(a, b, s) for the sample s.
inline int orientation(const Instance& inst, PointId a, PointId b, const SamplePoint& s) {
    Wide sum = 0;
    for (int k = 0; k < 3; ++k) sum += static_cast<Wide>(s.w[k]) * cross(inst.grid(a), inst.grid(b), inst.grid(s.v[k]));
    return sign(sum);
}

// +1 strictly inside the counterclockwise triangle, 0 on its boundary, -1 outside.
inline int locate(const Instance& inst, std::span<const PointId, 3> tri, const SamplePoint& s) {
    bool boundary = false;
    for (int k = 0; k < 3; ++k) {
        const int o = orientation(inst, tri[k], tri[(k + 1) % 3], s);
        if (o < 0) return -1;
        boundary = boundary || o == 0;
    }
    return boundary ? 0 : 1;
}

inline std::pair<double, double> to_double(const Instance& inst, const SamplePoint& s) {
    double x = 0, y = 0, total = 0;
    for (int k = 0; k < 3; ++k) {
        const auto [px, py] = inst.to_double(s.v[k]);
        x += static_cast<double>(s.w[k]) * px;
        y += static_cast<double>(s.w[k]) * py;
        total += static_cast<double>(s.w[k]);
    }
    return {x / total, y / total};
}

// A point strictly inside the strictly convex counterclockwise polygon.
inline SamplePoint sample_in_convex_polygon(std::span<const PointId> poly, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(1, poly.size() - 2);
    std::uniform_int_distribution<std::int64_t> weight(1, std::int64_t{1} << 20);
    const std::size_t i = pick(rng);
    return {{poly[0], poly[i], poly[i + 1]}, {weight(rng), weight(rng), weight(rng)}};
}

} // namespace mwt::geom
