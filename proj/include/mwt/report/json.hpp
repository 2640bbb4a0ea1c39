#pragma once

// JSON views of library results. Wall-clock timings are never serialized so
// equal inputs give byte-identical documents.

#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/closure.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/oracle/oracle.hpp"
#include "mwt/pipeline.hpp"
#include "mwt/rounding/rounding.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mwt::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json instance_stats(const Instance& inst) {
    return {{"points", inst.size()}, {"potential_edges", inst.edges().size()}, {"empty_triangles", inst.triangles().size()}};
}

inline json triangle_list(const Instance& inst, std::span<const TriangleId> tris) {
    json out = json::array();
    for (TriangleId t : tris) {
        const auto& v = inst.triangle(t).v;
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

inline json edge_ledger(const Instance& inst, const heur::EdgeStatusLedger& ledger) {
    json out = json::array();
    for (EdgeId e = 0; e < inst.edges().size(); ++e) {
        const auto p = ledger.provenance(e);
        out.push_back({{"u", inst.edge(e).u},
                       {"v", inst.edge(e).v},
                       {"status", heur::to_string(ledger.status(e))},
                       {"rule", heur::to_string(p.rule)},
                       {"iter", p.iteration}});
    }
    return out;
}

inline json ledger_summary(const Instance& inst, const heur::EdgeStatusLedger& ledger) {
    json status = json::object(), rules = json::object();
    for (auto s : {heur::EdgeStatus::Unknown, heur::EdgeStatus::ForcedIn, heur::EdgeStatus::ForcedOut})
        status[std::string(heur::to_string(s))] = ledger.count(s);
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        if (ledger.status(e) != heur::EdgeStatus::Unknown) {
            auto& slot = rules[std::string(heur::to_string(ledger.provenance(e).rule))];
            slot = slot.is_null() ? 1 : slot.get<std::size_t>() + 1;
        }
    return {{"status", status}, {"rule", rules}, {"rounds", ledger.rounds()}};
}

inline json weights(const Instance& inst, const lp::FractionalTriangulation& x, double floor = 1e-12) {
    json out = json::array();
    for (TriangleId t = 0; t < x.weights.size(); ++t) {
        if (std::abs(x.weights[t]) <= floor) continue;
        const auto& v = inst.triangle(t).v;
        out.push_back({{"triangle", {v[0], v[1], v[2]}}, {"weight", x.weights[t]}});
    }
    return out;
}

inline json lp_info(const lp::TriangulationLP& lp, const lp::LpSolution& sol) {
    const auto& i = sol.info;
    return {{"rows", lp.num_rows()},
            {"columns", lp.num_columns()},
            {"removed_triangles", lp.removed_triangles},
            {"forcing_rows", lp.forcing_rows},
            {"objective", sol.x.objective},
            {"iterations", i.iterations},
            {"degenerate_pivots", i.degenerate_pivots},
            {"redundant_rows", i.redundant_rows},
            {"empty_rows", i.empty_rows},
            {"crash_start", i.crash_start},
            {"bland_fallback", i.bland_fallback},
            {"max_residual", i.max_residual}};
}

inline json solve_report(const Instance& inst, const SolveReport& r) {
    json faces = json::array();
    for (const auto& f : r.faces) faces.push_back({{"boundary", f.boundary}, {"method", f.method}, {"cost", f.cost}});
    json out = {{"schema", kSchemaVersion},
                {"command", "solve"},
                {"instance", instance_stats(inst)},
                {"ledger", ledger_summary(inst, r.ledger)},
                {"solvable", r.solvable},
                {"faces", faces},
                {"lp", lp_info(r.lp, r.lp_solution)},
                {"lp_kind", r.kind == lp::SolutionKind::Integral ? "integral" : "fractional"},
                {"eliminated_fraction", r.eliminated_fraction()},
                {"integer_cost", r.integer_cost},
                {"integer_source", r.integer_source},
                {"gap", r.gap},
                {"triangulation", triangle_list(inst, r.triangles)}};
    if (r.kind == lp::SolutionKind::Fractional) out["fractional_solution"] = weights(inst, r.lp_solution.x);
    if (r.oracle_cost) out["oracle"] = {{"cost", *r.oracle_cost}, {"optima", r.oracle_optima}};
    return out;
}

inline json cost_ledger(const round::CostLedger& L) {
    return {{"sum_transposed", L.sum_transposed},
            {"partition_length", L.partition_length},
            {"sigma", L.sigma},
            {"fractional_cost", L.fractional_cost},
            {"bound", L.bound},
            {"bound_holds", L.holds()},
            {"bound_sigma_at_least_half", L.bound_sigma_half}};
}

inline json rounding_checks(const round::RoundingChecks& c) {
    return {{"blanket_sum_error", c.blanket_sum_error},
            {"blanket_reconstruction_error", c.blanket_reconstruction_error},
            {"transfer_mismatch", c.transfer_mismatch},
            {"feasibility_error", c.feasibility_error},
            {"max_faces_with_area", c.max_faces_with_area},
            {"two_face_violations", c.two_face_violations},
            {"length_checks", c.length_checks},
            {"length_violations", c.length_violations},
            {"length_violations_diagonal", c.length_violations_diagonal},
            {"length_violations_sigma_at_least_half", c.length_violations_sigma_half},
            {"worst_length_ratio", c.worst_length_ratio},
            {"hexagon_violations", c.hexagon_violations},
            {"worst_hexagon_ratio", c.worst_hexagon_ratio},
            {"max_image_vertices", c.max_image_vertices},
            {"all_pass", c.all_pass()}};
}

inline json rounding_report(const Instance& inst, const round::RoundingResult& r) {
    json faces = json::array();
    for (std::size_t i = 0; i < r.faces.size(); ++i) {
        const auto& f = r.faces[i];
        json blankets = json::array();
        for (const auto& b : f.blankets) blankets.push_back({{"weight", b.weight}, {"triangles", triangle_list(inst, b.triangles)}});
        faces.push_back({{"boundary", r.partition.faces[i].boundary},
                         {"transposed_cost", f.cost},
                         {"rounded_cost", f.rounded.total_cost},
                         {"blankets", blankets}});
    }
    json partition_edges = json::array();
    for (EdgeId e : r.partition.edges) partition_edges.push_back({inst.edge(e).u, inst.edge(e).v});
    return {{"partition", {{"edges", partition_edges}, {"total_length", r.partition.total_length}}},
            {"sensitivity_witness",
             {{"partition_edge", r.witness.partition_edge}, {"crossing_edge", r.witness.crossing_edge},
              {"endpoint", r.witness.endpoint}}},
            {"cost_ledger", cost_ledger(r.ledger)},
            {"checks", rounding_checks(r.checks)},
            {"faces", faces},
            {"rounded_cost", r.rounded_cost},
            {"triangulation", triangle_list(inst, r.triangles)}};
}

} // namespace mwt::report
