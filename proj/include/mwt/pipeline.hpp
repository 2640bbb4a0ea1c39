#pragma once

// End-to-end solve: heuristics, then the polygon DP on every skeleton face
// when the skeleton is solvable, else the ledger-reduced LP.

#include "mwt/error.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/closure.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/oracle/oracle.hpp"
#include "mwt/polygon/polygon_dp.hpp"
#include "mwt/rounding/rounding.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mwt {

struct SolveOptions {
    heur::HeuristicConfig heuristics;
    lp::SimplexOptions simplex;
    double integrality_tolerance = 1e-7;
    bool oracle = false;
    std::size_t oracle_guard = oracle::kDefaultSizeGuard;
    round::PartitionStrategy partition = round::PartitionStrategy::HertelMehlhorn;
};

struct StageTimes {
    double heuristics_ms = 0.0;
    double dp_ms = 0.0;
    double lp_ms = 0.0;
    double oracle_ms = 0.0;
    double rounding_ms = 0.0;
};

struct FaceMethod {
    std::vector<PointId> boundary;
    std::string method; // "dp" or "lp"
    double cost = 0.0;  // DP cost; 0 for LP faces
};

struct SolveReport {
    std::size_t points = 0;
    std::size_t potential_edges = 0;
    std::size_t empty_triangles = 0;

    heur::EdgeStatusLedger ledger{0};
    std::map<std::string, std::size_t> status_counts;
    std::map<std::string, std::size_t> rule_counts;
    bool solvable = false;
    std::vector<FaceMethod> faces;

    lp::TriangulationLP lp;
    lp::LpSolution lp_solution;
    lp::SolutionKind kind = lp::SolutionKind::Fractional;
    std::size_t eliminated_triangles = 0;

    std::vector<TriangleId> triangles; // integer triangulation reported
    double integer_cost = 0.0;
    std::string integer_source;        // "dp", "lp", "oracle" or "rounded"
    std::optional<double> oracle_cost;
    std::size_t oracle_optima = 0;
    double gap = 1.0;                  // integer_cost / lp objective

    StageTimes times;

    double lp_objective() const { return lp_solution.x.objective; }
    double eliminated_fraction() const {
        return empty_triangles == 0 ? 0.0 : static_cast<double>(eliminated_triangles) / empty_triangles;
    }
};

namespace detail {

class Stopwatch {
public:
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace detail

inline SolveReport solve(const Instance& inst, const SolveOptions& options = {}) {
    options.heuristics.validate();
    SolveReport r;
    r.points = inst.size();
    r.potential_edges = inst.edges().size();
    r.empty_triangles = inst.triangles().size();
    detail::Stopwatch clock;

    r.ledger = heur::run_closure(inst, options.heuristics);
    for (auto s : {heur::EdgeStatus::Unknown, heur::EdgeStatus::ForcedIn, heur::EdgeStatus::ForcedOut})
        r.status_counts[std::string(heur::to_string(s))] = r.ledger.count(s);
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        if (r.ledger.status(e) != heur::EdgeStatus::Unknown)
            ++r.rule_counts[std::string(heur::to_string(r.ledger.provenance(e).rule))];
    const auto skeleton = heur::skeleton_faces(r.ledger, inst);
    r.solvable = skeleton.solvable;
    r.times.heuristics_ms = clock.lap_ms();

    if (r.solvable) {
        for (const Face& f : skeleton.faces) {
            const auto tri = mwt_polygon(inst, f);
            r.faces.push_back({tri.boundary, "dp", tri.total_cost});
            r.triangles.insert(r.triangles.end(), tri.triangles.begin(), tri.triangles.end());
            r.integer_cost += tri.total_cost;
        }
        std::sort(r.triangles.begin(), r.triangles.end());
        r.integer_source = "dp";
    } else {
        for (const Face& f : skeleton.faces) r.faces.push_back({f.boundary, "lp", 0.0});
    }
    r.times.dp_ms = clock.lap_ms();

    r.lp = lp::build_lp(inst, &r.ledger);
    r.eliminated_triangles = r.lp.removed_triangles;
    r.lp_solution = lp::solve_to_extreme_point(inst, r.lp, options.simplex, &r.ledger);
    const auto cls = lp::classify_solution(inst, r.lp_solution.x, options.integrality_tolerance);
    r.kind = cls.kind;
    if (!r.solvable && cls.kind == lp::SolutionKind::Integral) {
        r.triangles = cls.triangles;
        r.integer_cost = cls.cost;
        r.integer_source = "lp";
    }
    r.times.lp_ms = clock.lap_ms();

    if (options.oracle) {
        const auto bf = oracle::brute_force_mwt(inst, options.oracle_guard);
        r.oracle_cost = bf.cost;
        r.oracle_optima = bf.optima.size();
        if (!r.integer_source.empty() && std::abs(r.integer_cost - bf.cost) > 1e-6)
            throw InvariantError("integer solution cost " + std::to_string(r.integer_cost) +
                                 " differs from the oracle optimum " + std::to_string(bf.cost));
        if (r.integer_source.empty()) {
            r.triangles = bf.optima.front().triangles;
            r.integer_cost = bf.cost;
            r.integer_source = "oracle";
        }
    }
    r.times.oracle_ms = clock.lap_ms();

    if (r.integer_source.empty()) {
        const auto partition = round::build_convex_partition(inst, options.partition, &r.ledger);
        const auto rounded = round::transpose_solution(inst, r.lp_solution.x, partition);
        r.triangles = rounded.triangles;
        r.integer_cost = rounded.rounded_cost;
        r.integer_source = "rounded";
    }
    r.times.rounding_ms = clock.lap_ms();

    r.gap = r.integer_cost / r.lp_objective();
    if (r.gap < 1.0 - 1e-7)
        throw InvariantError("integer cost below the LP objective (gap " + std::to_string(r.gap) + ")");
    return r;
}

} // namespace mwt
