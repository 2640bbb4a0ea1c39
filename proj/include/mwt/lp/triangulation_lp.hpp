#pragma once

// The triangulation LP in edge-constraint form: one variable per empty
// triangle, and per potential edge either a balance row (left weight equals
// right weight) or, on the region boundary, a cover row (inner weight is 1).

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/closure.hpp"
#include "mwt/lp/simplex.hpp"
#include "mwt/polygon/polygon_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mwt::lp {

enum class RowKind : std::uint8_t { Balance, Boundary, ForceLeft, ForceRight };

inline std::string_view to_string(RowKind k) {
    switch (k) {
    case RowKind::Balance: return "balance";
    case RowKind::Boundary: return "boundary";
    case RowKind::ForceLeft: return "force_left";
    case RowKind::ForceRight: return "force_right";
    }
    return "?";
}

struct Row {
    EdgeId edge = kNone;
    RowKind kind = RowKind::Balance;
    double rhs = 0.0;
    std::vector<std::pair<std::uint32_t, int>> entries; // (column, coefficient)
};

struct TriangulationLP {
    std::vector<TriangleId> columns; // triangle of each column
    std::vector<double> cost;        // c(t) per column
    std::vector<Row> rows;
    std::vector<std::int64_t> column_of; // per instance triangle, -1 if absent
    std::vector<EdgeId> region_boundary; // sides of the region, counterclockwise
    std::size_t removed_triangles = 0;   // dropped because of a ForcedOut edge
    std::size_t forcing_rows = 0;

    std::size_t num_columns() const { return columns.size(); }
    std::size_t num_rows() const { return rows.size(); }
};

struct LedgerUse {
    bool remove_forced_out = true;
    bool add_forcing_rows = true;
};

namespace detail {

// Side of triangle t relative to u->v of its edge e: +1 left, -1 right.
inline int side_of(const Instance& inst, TriangleId t, EdgeId e) {
    const Edge& edge = inst.edge(e);
    for (PointId w : inst.triangle(t).v)
        if (w != edge.u && w != edge.v) return inst.orientation(edge.u, edge.v, w);
    throw InvariantError("triangle does not contain edge");
}

inline void fill_rows(const Instance& inst, TriangulationLP& lp, std::span<const EdgeId> row_edges,
                      const std::vector<char>& is_region_side,
                      const heur::EdgeStatusLedger* ledger, bool forcing) {
    for (EdgeId e : row_edges) {
        std::vector<std::pair<std::uint32_t, int>> left, right;
        auto collect = [&](std::span<const TriangleId> ts) {
            for (TriangleId t : ts) {
                const auto col = lp.column_of[t];
                if (col < 0) continue;
                (side_of(inst, t, e) > 0 ? left : right).emplace_back(static_cast<std::uint32_t>(col), 1);
            }
        };
        collect(inst.triangles_left(e));
        collect(inst.triangles_right(e));
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        if (is_region_side[e]) {
            Row r{e, RowKind::Boundary, 1.0, {}};
            r.entries = left;
            r.entries.insert(r.entries.end(), right.begin(), right.end());
            std::sort(r.entries.begin(), r.entries.end());
            if (r.entries.empty())
                throw InputError("boundary edge (" + std::to_string(inst.edge(e).u) + "," +
                                 std::to_string(inst.edge(e).v) + ") lies in no usable triangle");
            lp.rows.push_back(std::move(r));
        } else if (forcing && ledger && ledger->forced_in(e)) {
            lp.rows.push_back({e, RowKind::ForceLeft, 1.0, left});
            lp.rows.push_back({e, RowKind::ForceRight, 1.0, right});
            lp.forcing_rows += 2;
        } else {
            Row r{e, RowKind::Balance, 0.0, left};
            for (auto [c, _] : right) r.entries.emplace_back(c, -1);
            std::sort(r.entries.begin(), r.entries.end());
            lp.rows.push_back(std::move(r));
        }
    }
}

} // namespace detail

// LP over the whole convex hull. With a ledger, triangles touching a
// ForcedOut edge are dropped and each ForcedIn interior edge gets two cover
// rows (one per side) in place of its balance row.
inline TriangulationLP build_lp(const Instance& inst, const heur::EdgeStatusLedger* ledger = nullptr,
                                LedgerUse use = {}) {
    TriangulationLP lp;
    lp.column_of.assign(inst.triangles().size(), -1);
    for (TriangleId t = 0; t < inst.triangles().size(); ++t) {
        if (ledger && use.remove_forced_out) {
            const auto& tri = inst.triangle(t);
            if (std::any_of(tri.e.begin(), tri.e.end(), [&](EdgeId e) { return ledger->forced_out(e); })) {
                ++lp.removed_triangles;
                continue;
            }
        }
        lp.column_of[t] = static_cast<std::int64_t>(lp.columns.size());
        lp.columns.push_back(t);
        lp.cost.push_back(inst.triangle(t).cost);
    }
    std::vector<char> side(inst.edges().size(), 0);
    for (EdgeId e : geom::hull_edges(inst)) side[e] = 1;
    lp.region_boundary = geom::hull_edges(inst);
    std::vector<EdgeId> all(inst.edges().size());
    std::iota(all.begin(), all.end(), EdgeId{0});
    detail::fill_rows(inst, lp, all, side, ledger, use.add_forcing_rows);
    return lp;
}

// LP restricted to an empty simple polygon: triangles inside it, one row per
// side and per usable chord.
inline TriangulationLP build_polygon_lp(const Instance& inst, std::span<const PointId> boundary) {
    const auto P = poly::normalize_polygon(inst, boundary);
    for (PointId p = 0; p < inst.size(); ++p)
        if (geom::strictly_inside(inst, P, p)) throw InputError("polygon is not empty");
    const std::size_t n = P.size();
    const auto usable = poly::chord_table(inst, P);
    std::vector<int> pos(inst.size(), -1);
    for (std::size_t i = 0; i < n; ++i) pos[P[i]] = static_cast<int>(i);

    TriangulationLP lp;
    lp.column_of.assign(inst.triangles().size(), -1);
    std::vector<char> side(inst.edges().size(), 0);
    std::vector<EdgeId> row_edges;
    for (std::size_t i = 0; i < n; ++i) {
        const EdgeId e = *inst.edge_between(P[i], P[(i + 1) % n]);
        side[e] = 1;
        lp.region_boundary.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            if (usable[i][k]) row_edges.push_back(*inst.edge_between(P[i], P[k]));
    std::sort(row_edges.begin(), row_edges.end());

    for (TriangleId t = 0; t < inst.triangles().size(); ++t) {
        const auto& tri = inst.triangle(t);
        bool inside = true;
        for (PointId v : tri.v) inside = inside && pos[v] >= 0;
        // Edges inside a simple polygon bound a triangle inside it.
        for (int s = 0; s < 3 && inside; ++s)
            inside = usable[pos[tri.v[s]]][pos[tri.v[(s + 1) % 3]]] != 0;
        if (!inside) continue;
        lp.column_of[t] = static_cast<std::int64_t>(lp.columns.size());
        lp.columns.push_back(t);
        lp.cost.push_back(tri.cost);
    }
    detail::fill_rows(inst, lp, row_edges, side, nullptr, false);
    return lp;
}

inline StandardForm to_standard_form(const TriangulationLP& lp) {
    StandardForm sf;
    const auto m = static_cast<Eigen::Index>(lp.rows.size());
    const auto n = static_cast<Eigen::Index>(lp.columns.size());
    sf.A = Eigen::MatrixXd::Zero(m, n);
    sf.b.resize(m);
    sf.c.resize(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (auto [col, coef] : lp.rows[i].entries) sf.A(i, col) = coef;
        sf.b(i) = lp.rows[i].rhs;
    }
    for (Eigen::Index j = 0; j < n; ++j) sf.c(j) = lp.cost[j];
    return sf;
}

struct FractionalTriangulation {
    std::vector<double> weights;      // per instance triangle
    std::vector<double> edge_weights; // per potential edge
    double objective = 0.0;
};

inline void derive_edge_weights(const Instance& inst, FractionalTriangulation& x) {
    x.edge_weights.assign(inst.edges().size(), 0.0);
    x.objective = 0.0;
    for (TriangleId t = 0; t < inst.triangles().size(); ++t) {
        const double w = x.weights[t];
        if (w == 0.0) continue;
        x.objective += w * inst.triangle(t).cost;
        for (EdgeId e : inst.triangle(t).e) x.edge_weights[e] += w;
    }
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        if (!inst.edge(e).is_boundary) x.edge_weights[e] *= 0.5;
}

inline FractionalTriangulation from_columns(const Instance& inst, const TriangulationLP& lp,
                                            const Eigen::VectorXd& values) {
    FractionalTriangulation x;
    x.weights.assign(inst.triangles().size(), 0.0);
    for (std::size_t j = 0; j < lp.columns.size(); ++j) x.weights[lp.columns[j]] = values(static_cast<Eigen::Index>(j));
    derive_edge_weights(inst, x);
    return x;
}

// Max-norm violation of the LP rows by x.
inline double max_residual(const TriangulationLP& lp, const FractionalTriangulation& x) {
    double worst = 0.0;
    for (const auto& r : lp.rows) {
        double s = -r.rhs;
        for (auto [col, coef] : r.entries) s += coef * x.weights[lp.columns[col]];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

// A triangulation of the LP's region from greedy shortest-first insertion of
// edges that have rows, with ForcedIn and region sides first. Returns the
// column ids of its triangles, or nothing when the greedy set does not close
// up into usable triangles.
inline std::optional<std::vector<int>> greedy_triangulation_columns(const Instance& inst, const TriangulationLP& lp,
                                                                   const heur::EdgeStatusLedger* ledger = nullptr) {
    std::vector<EdgeId> candidates;
    std::vector<int> priority(inst.edges().size(), 2);
    for (const auto& r : lp.rows) {
        if (r.kind == RowKind::ForceRight) continue;
        if (r.entries.empty()) continue;
        candidates.push_back(r.edge);
        if (r.kind == RowKind::Boundary) priority[r.edge] = 0;
        if (ledger && ledger->forced_in(r.edge)) priority[r.edge] = std::min(priority[r.edge], 1);
    }
    for (EdgeId e : lp.region_boundary) priority[e] = 0;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::sort(candidates.begin(), candidates.end(), [&](EdgeId a, EdgeId b) {
        if (priority[a] != priority[b]) return priority[a] < priority[b];
        const auto la = geom::squared_distance(inst.grid(inst.edge(a).u), inst.grid(inst.edge(a).v));
        const auto lb = geom::squared_distance(inst.grid(inst.edge(b).u), inst.grid(inst.edge(b).v));
        if (la != lb) return la < lb;
        return a < b;
    });
    std::vector<EdgeId> chosen;
    for (EdgeId e : candidates) {
        bool ok = true;
        for (EdgeId f : chosen)
            if (inst.edges_cross(e, f)) {
                ok = false;
                break;
            }
        if (ok) chosen.push_back(e);
    }
    std::vector<int> cols;
    for (const Face& f : geom::extract_faces(inst, chosen)) {
        if (f.boundary.size() != 3) return std::nullopt;
        const auto t = inst.triangle_with(f.boundary[0], f.boundary[1], f.boundary[2]);
        if (!t || lp.column_of[*t] < 0) return std::nullopt;
        cols.push_back(static_cast<int>(lp.column_of[*t]));
    }
    if (cols.empty()) return std::nullopt;
    std::sort(cols.begin(), cols.end());
    return cols;
}

struct SolveInfo {
    std::size_t rows = 0;
    std::size_t columns = 0;
    std::size_t iterations = 0;
    std::size_t degenerate_pivots = 0;
    std::size_t redundant_rows = 0;
    std::size_t empty_rows = 0;
    bool crash_start = false;
    bool bland_fallback = false;
    double max_residual = 0.0;
};

struct LpSolution {
    FractionalTriangulation x;
    SolveInfo info;
};

// Optimal basic solution of `lp`. Throws InvariantError if the solver fails,
// since every valid region has a feasible integer triangulation.
inline LpSolution solve_to_extreme_point(const Instance& inst, const TriangulationLP& lp,
                                         const SimplexOptions& options = {},
                                         const heur::EdgeStatusLedger* ledger = nullptr) {
    const StandardForm sf = to_standard_form(lp);
    std::vector<int> crash;
    if (auto g = greedy_triangulation_columns(inst, lp, ledger)) crash = std::move(*g);
    const SimplexResult res = simplex(sf, crash, options);
    switch (res.status) {
    case SimplexStatus::Optimal: break;
    case SimplexStatus::Infeasible: throw InvariantError("triangulation LP reported infeasible");
    case SimplexStatus::Unbounded: throw InvariantError("triangulation LP reported unbounded");
    case SimplexStatus::IterationLimit: throw InvariantError("simplex iteration limit reached");
    }
    LpSolution out;
    out.x = from_columns(inst, lp, res.x);
    out.info = {lp.rows.size(), lp.columns.size(), res.iterations, res.degenerate_pivots,
                res.redundant_rows, res.empty_rows, res.crash_start, res.bland_fallback,
                max_residual(lp, out.x)};
    if (out.info.max_residual > 1e-6)
        throw InvariantError("LP solution violates constraints by " + std::to_string(out.info.max_residual));
    return out;
}

enum class SolutionKind { Integral, Fractional };

struct Classification {
    SolutionKind kind = SolutionKind::Fractional;
    std::vector<TriangleId> triangles;                        // Integral: the triangulation
    std::vector<std::pair<TriangleId, double>> fractional;    // Fractional: witnesses
    double cost = 0.0;
};

// Integer triangulation check: triangles are pairwise interior-disjoint
// (no two of their edges cross) and their areas add up to the region.
inline bool is_valid_tiling(const Instance& inst, std::span<const TriangleId> tris,
                            std::span<const PointId> region) {
    geom::Wide area = 0;
    std::vector<EdgeId> edges;
    for (TriangleId t : tris) {
        const auto& T = inst.triangle(t);
        area += inst.doubled_area(T.v[0], T.v[1], T.v[2]);
        edges.insert(edges.end(), T.e.begin(), T.e.end());
    }
    const auto region_area = inst.polygon_doubled_area(region);
    if (area != (region_area < 0 ? -region_area : region_area)) return false;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (inst.edges_cross(edges[i], edges[j])) return false;
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (std::size_t j = i + 1; j < tris.size(); ++j)
            if (tris[i] == tris[j]) return false;
    return true;
}

inline Classification classify_solution(const Instance& inst, const FractionalTriangulation& x,
                                        double tol = 1e-7, std::span<const PointId> region = {}) {
    Classification out;
    for (TriangleId t = 0; t < x.weights.size(); ++t) {
        const double w = x.weights[t];
        if (std::abs(w - 1.0) <= tol)
            out.triangles.push_back(t);
        else if (std::abs(w) > tol)
            out.fractional.emplace_back(t, w);
    }
    if (!out.fractional.empty()) {
        out.kind = SolutionKind::Fractional;
        out.triangles.clear();
        out.cost = x.objective;
        return out;
    }
    out.kind = SolutionKind::Integral;
    const std::vector<PointId> hull(inst.hull().begin(), inst.hull().end());
    const std::span<const PointId> area_of = region.empty() ? std::span<const PointId>(hull) : region;
    if (!is_valid_tiling(inst, out.triangles, area_of))
        throw InvariantError("integral LP solution is not a valid triangulation");
    for (TriangleId t : out.triangles) out.cost += inst.triangle(t).cost;
    return out;
}

// ---- interchange -----------------------------------------------------------

inline std::string column_name(const Instance& inst, TriangleId t) {
    const auto& v = inst.triangle(t).v;
    std::array<PointId, 3> s{v[0], v[1], v[2]};
    std::sort(s.begin(), s.end());
    return "t" + std::to_string(s[0]) + "_" + std::to_string(s[1]) + "_" + std::to_string(s[2]);
}

inline std::string row_name(const Instance& inst, const Row& r) {
    std::string base = "e" + std::to_string(inst.edge(r.edge).u) + "_" + std::to_string(inst.edge(r.edge).v);
    switch (r.kind) {
    case RowKind::Balance: return base;
    case RowKind::Boundary: return base + "_b";
    case RowKind::ForceLeft: return base + "_l";
    case RowKind::ForceRight: return base + "_r";
    }
    return base;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CPLEX LP text format.
inline void export_lp(std::ostream& out, const Instance& inst, const TriangulationLP& lp) {
    out << "\\ minimum-weight triangulation LP relaxation\n";
    out << "\\ " << lp.columns.size() << " columns, " << lp.rows.size() << " rows\n";
    out << "Minimize\n obj:";
    for (std::size_t j = 0; j < lp.columns.size(); ++j) {
        if (j && j % 6 == 0) out << "\n    ";
        out << (j ? " + " : " ") << format_double(lp.cost[j]) << ' ' << column_name(inst, lp.columns[j]);
    }
    if (lp.columns.empty()) out << " 0";
    out << "\nSubject To\n";
    for (const auto& r : lp.rows) {
        if (r.entries.empty()) continue;
        out << ' ' << row_name(inst, r) << ':';
        for (std::size_t k = 0; k < r.entries.size(); ++k) {
            if (k && k % 10 == 0) out << "\n    ";
            const auto [col, coef] = r.entries[k];
            out << (coef < 0 ? " - " : (k ? " + " : " ")) << column_name(inst, lp.columns[col]);
        }
        out << " = " << (r.rhs == 0.0 ? "0" : "1") << '\n';
    }
    out << "Bounds\n";
    for (TriangleId t : lp.columns) out << ' ' << column_name(inst, t) << " >= 0\n";
    out << "End\n";
}

// Reads "name value" lines (blank lines and '#' comments skipped). Names
// not in the LP are an error; absent columns are zero.
inline FractionalTriangulation import_solution(std::istream& in, const Instance& inst, const TriangulationLP& lp) {
    std::map<std::string, TriangleId> by_name;
    for (TriangleId t : lp.columns) by_name.emplace(column_name(inst, t), t);
    FractionalTriangulation x;
    x.weights.assign(inst.triangles().size(), 0.0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tok(line);
        std::string name;
        double value = 0.0;
        if (!(tok >> name >> value)) throw ParseError(line_no, "expected '<name> <value>'");
        auto it = by_name.find(name);
        if (it == by_name.end()) throw ParseError(line_no, "unknown variable '" + name + "'");
        x.weights[it->second] = value;
    }
    derive_edge_weights(inst, x);
    return x;
}

inline void export_solution(std::ostream& out, const Instance& inst, const TriangulationLP& lp,
                            const FractionalTriangulation& x) {
    for (TriangleId t : lp.columns)
        if (x.weights[t] != 0.0) out << column_name(inst, t) << ' ' << format_double(x.weights[t]) << '\n';
}

} // namespace mwt::lp
