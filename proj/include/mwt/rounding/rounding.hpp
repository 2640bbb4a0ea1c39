#pragma once

// Rounding pipeline: transposes a fractional triangulation X into every
// face of a convex partition, checks the bound chain, and rounds each face
// with the polygon DP.

#include "mwt/error.hpp"
#include "mwt/geometry/sample.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/oracle/oracle.hpp"
#include "mwt/polygon/polygon_dp.hpp"
#include "mwt/rounding/partition.hpp"
#include "mwt/rounding/transposal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mwt::round {

struct CostLedger {
    double sum_transposed = 0.0;
    double partition_length = 0.0;
    double sigma = 0.0;
    double fractional_cost = 0.0;
    double bound = 0.0;
    double bound_sigma_half = 0.0; // same bound with max(sigma, 1/2)
    bool holds() const { return sum_transposed <= bound + 1e-6; }
};

struct FaceResult {
    std::vector<Blanket> blankets;
    std::vector<double> weights;      // X^f per instance triangle, from blankets
    std::vector<double> weights_fact; // X^f from the per-triangle transfer
    double cost = 0.0;                // c(X^f)
    PolygonTriangulation rounded;
};

// Worst observed values and violation counts; every check passes when all
// counts are zero.
struct RoundingChecks {
    double blanket_sum_error = 0.0;
    double blanket_reconstruction_error = 0.0;
    double transfer_mismatch = 0.0;
    double feasibility_error = 0.0;
    std::size_t max_faces_with_area = 0;
    std::size_t two_face_violations = 0;
    std::size_t length_checks = 0;
    std::size_t length_violations = 0;
    std::size_t length_violations_diagonal = 0; // edges already diagonals of the face
    std::size_t length_violations_sigma_half = 0;
    double worst_length_ratio = 0.0;             // |e|f| / |e|
    std::size_t hexagon_violations = 0;
    double worst_hexagon_ratio = 0.0;
    std::size_t max_image_vertices = 0;

    bool blanket_identity(double tol = 1e-7) const {
        return blanket_sum_error <= tol && blanket_reconstruction_error <= tol;
    }
    bool all_pass() const {
        return blanket_identity() && transfer_mismatch <= 1e-7 && feasibility_error <= 1e-7 &&
               two_face_violations == 0 && length_violations == 0 && hexagon_violations == 0;
    }
};

struct RoundingResult {
    ConvexPartition partition;
    SensitivityWitness witness;
    std::vector<FaceResult> faces;
    CostLedger ledger;
    RoundingChecks checks;
    std::vector<TriangleId> triangles; // rounded triangulation, sorted
    double rounded_cost = 0.0;
};

struct RoundingOptions {
    std::uint64_t seed = 1;
    std::size_t samples_per_face = 20;
};

namespace detail {

inline void add_transposal(const Instance& inst, const TriangleTransposal& r, double w, std::vector<double>& into) {
    for (TriangleId s : triangulated_transposal(inst, r)) into[s] += w;
}

inline double coverage(const Instance& inst, const std::vector<double>& weights, const geom::SamplePoint& s,
                       bool& on_edge) {
    double sum = 0.0;
    for (TriangleId t = 0; t < weights.size(); ++t) {
        if (weights[t] == 0.0) continue;
        const int where = geom::locate(inst, std::span<const PointId, 3>(inst.triangle(t).v), s);
        if (where == 0) on_edge = true;
        if (where > 0) sum += weights[t];
    }
    return sum;
}

} // namespace detail

// Number of partition faces in which t has a positive-area transposal.
inline std::size_t faces_with_area(const Instance& inst, const ConvexPartition& p, TriangleId t) {
    std::size_t count = 0;
    for (const Face& f : p.faces)
        if (triangle_crosses_face(inst, f.boundary, t) && transpose_triangle(inst, f, t).positive_area) ++count;
    return count;
}

inline RoundingResult transpose_solution(const Instance& inst, const lp::FractionalTriangulation& x,
                                         ConvexPartition partition, const RoundingOptions& options = {}) {
    validate_partition(inst, partition);
    RoundingResult out;
    out.partition = std::move(partition);
    const auto& P = out.partition;
    auto& chk = out.checks;
    const double sigma = measure_sensitivity(inst, P, &out.witness);
    const std::size_t T = inst.triangles().size();
    std::mt19937_64 rng(options.seed);

    for (const Face& face : P.faces) {
        FaceResult fr;
        fr.weights.assign(T, 0.0);
        fr.weights_fact.assign(T, 0.0);

        // Per-triangle data over the support of x crossing this face.
        std::vector<std::optional<TriangleTransposal>> rec(T);
        for (TriangleId t = 0; t < T; ++t) {
            if (x.weights[t] <= kResidualFloor || !triangle_crosses_face(inst, face.boundary, t)) continue;
            rec[t] = transpose_triangle(inst, face, t);
            const auto& r = *rec[t];
            chk.max_image_vertices = std::max(chk.max_image_vertices, r.image.size());
            detail::add_transposal(inst, r, x.weights[t], fr.weights_fact);

            for (const auto& e : r.edges) {
                ++chk.length_checks;
                chk.worst_length_ratio = std::max(chk.worst_length_ratio, e.length / e.source_length);
                if (e.length > 2.0 * sigma * e.source_length + 1e-9) {
                    ++chk.length_violations;
                    if (e.kind == 3) ++chk.length_violations_diagonal;
                }
                if (e.length > 2.0 * std::max(sigma, 0.5) * e.source_length + 1e-9) ++chk.length_violations_sigma_half;
            }
            const double image_cost = transposal_cost(inst, r);
            if (r.positive_area) {
                const auto tri = mwt_polygon(inst, std::span<const PointId>(r.image));
                chk.worst_hexagon_ratio = std::max(chk.worst_hexagon_ratio, tri.total_cost / image_cost);
                if (tri.total_cost > 3.0 * image_cost + 1e-9) ++chk.hexagon_violations;
            }
        }

        fr.blankets = decompose_into_blankets(inst, x, face);
        std::vector<double> rebuilt(T, 0.0);
        double eps_sum = 0.0;
        for (const Blanket& b : fr.blankets) {
            transpose_blanket(inst, face, b);
            eps_sum += b.weight;
            for (TriangleId t : b.triangles) {
                rebuilt[t] += b.weight;
                detail::add_transposal(inst, *rec[t], b.weight, fr.weights);
            }
        }
        chk.blanket_sum_error = std::max(chk.blanket_sum_error, std::abs(eps_sum - 1.0));
        for (TriangleId t = 0; t < T; ++t) {
            if (rec[t]) chk.blanket_reconstruction_error =
                            std::max(chk.blanket_reconstruction_error, std::abs(rebuilt[t] - x.weights[t]));
            chk.transfer_mismatch = std::max(chk.transfer_mismatch, std::abs(fr.weights[t] - fr.weights_fact[t]));
            fr.cost += fr.weights[t] * inst.triangle(t).cost;
        }

        for (std::size_t k = 0; k < options.samples_per_face;) {
            const auto s = geom::sample_in_convex_polygon(face.boundary, rng);
            bool on_edge = false;
            const double c = detail::coverage(inst, fr.weights, s, on_edge);
            if (on_edge) continue;
            chk.feasibility_error = std::max(chk.feasibility_error, std::abs(c - 1.0));
            ++k;
        }

        fr.rounded = mwt_polygon(inst, face);
        out.triangles.insert(out.triangles.end(), fr.rounded.triangles.begin(), fr.rounded.triangles.end());
        out.rounded_cost += fr.rounded.total_cost;
        out.ledger.sum_transposed += fr.cost;
        out.faces.push_back(std::move(fr));
    }
    std::sort(out.triangles.begin(), out.triangles.end());

    for (TriangleId t = 0; t < T; ++t) {
        const std::size_t c = faces_with_area(inst, P, t);
        chk.max_faces_with_area = std::max(chk.max_faces_with_area, c);
        if (c > 2) ++chk.two_face_violations;
    }

    auto& L = out.ledger;
    L.partition_length = P.total_length;
    L.sigma = sigma;
    L.fractional_cost = x.objective;
    L.bound = 3.0 * P.total_length + 12.0 * sigma * x.objective;
    L.bound_sigma_half = 3.0 * P.total_length + 12.0 * std::max(sigma, 0.5) * x.objective;
    return out;
}

// ---- star bound ---------------------------------------------------------------

struct StarCheck {
    PointId vertex = kNone;
    bool interior = false;
    double s_min = 0.0;
    double weighted_length = 0.0; // sum over incident e of X_e |e|
    double factor = 1.0;
    bool holds() const { return s_min <= factor * weighted_length + 1e-7; }
};

inline std::vector<StarCheck> check_star_bound(const Instance& inst, const lp::FractionalTriangulation& x) {
    std::vector<StarCheck> out;
    for (PointId v = 0; v < inst.size(); ++v) {
        StarCheck s;
        s.vertex = v;
        s.interior = !inst.on_hull(v);
        s.factor = s.interior ? 1.5 : 1.0;
        s.s_min = oracle::min_cost_star(inst, v).cost;
        for (EdgeId e : inst.incident_edges(v)) s.weighted_length += x.edge_weights[e] * inst.edge(e).length;
        out.push_back(s);
    }
    return out;
}

} // namespace mwt::round
