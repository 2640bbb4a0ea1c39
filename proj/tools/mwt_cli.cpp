// mwt: command-line driver for the workbench.
//
//   mwt solve FILE        heuristics, DP per skeleton face or ledger-reduced LP
//   mwt round FILE        rounding pipeline over a convex partition
//   mwt heuristics FILE   edge status ledger
//   mwt lp FILE           full or ledger-reduced LP, LP file export/import
//   mwt oracle FILE       brute-force enumeration
//   mwt generate          seeded random instances
//
// Exit codes: 0 integral, 2 fractional optimum, 3 input error, 4 invariant
// violation.

#include "mwt/geometry/generate.hpp"
#include "mwt/geometry/io.hpp"
#include "mwt/pipeline.hpp"
#include "mwt/report/json.hpp"
#include "mwt/report/svg.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mwt;
using nlohmann::json;

constexpr int kExitIntegral = 0;
constexpr int kExitFractional = 2;
constexpr int kExitInput = 3;
constexpr int kExitInvariant = 4;

struct Flags {
    std::string input;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    bool oracle = false;
    std::size_t guard = oracle::kDefaultSizeGuard;
    std::string partition = "hm";
    std::string export_lp;
    std::string import_solution;
    std::string svg;
    std::string json_path;
    std::string rules;
    bool no_ledger = false;
    bool list = false;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("mwt");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("MWT_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

heur::RuleSet parse_rules(const std::string& list) {
    auto rules = heur::RuleSet::all();
    std::stringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == "all") {
            rules = heur::RuleSet::all();
            continue;
        }
        if (tok == "none") {
            rules = heur::RuleSet::none();
            continue;
        }
        const bool off = tok[0] == '-';
        const std::string name = (tok[0] == '-' || tok[0] == '+') ? tok.substr(1) : tok;
        const auto r = heur::parse_rule(name);
        if (!r) throw InputError("unknown rule '" + name + "'");
        off ? rules.disable(*r) : rules.enable(*r);
    }
    return rules;
}

SolveOptions solve_options(const Flags& f) {
    SolveOptions o;
    o.heuristics.rules = parse_rules(f.rules);
    o.simplex.feasibility_tol = f.tolerance;
    o.simplex.optimality_tol = f.tolerance;
    o.oracle = f.oracle;
    o.oracle_guard = f.guard;
    const auto p = round::parse_partition(f.partition);
    if (!p) throw InputError("unknown partition strategy '" + f.partition + "'");
    o.partition = *p;
    return o;
}

// Human-readable output; moves to stderr when the JSON goes to stdout.
std::FILE* text_out = stdout;

void emit_json(const Flags& f, const json& doc) {
    if (f.json_path.empty()) return;
    const std::string text = doc.dump(2) + "\n";
    if (f.json_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(f.json_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + f.json_path);
    out << text;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

void print_stats(const Instance& inst) {
    fmt::print(text_out, "instance: {} points, {} potential edges, {} empty triangles\n", inst.size(), inst.edges().size(),
               inst.triangles().size());
}

void print_ledger(const Instance& inst, const heur::EdgeStatusLedger& ledger) {
    fmt::print(text_out, "ledger: {} forced in, {} forced out, {} unknown after {} rounds\n",
               ledger.count(heur::EdgeStatus::ForcedIn), ledger.count(heur::EdgeStatus::ForcedOut),
               ledger.count(heur::EdgeStatus::Unknown), ledger.rounds());
    std::map<std::string, std::size_t> per_rule;
    for (EdgeId e = 0; e < inst.edges().size(); ++e)
        if (ledger.status(e) != heur::EdgeStatus::Unknown) ++per_rule[std::string(heur::to_string(ledger.provenance(e).rule))];
    for (const auto& [rule, n] : per_rule) fmt::print(text_out, "  {:<13} {}\n", rule, n);
}

int cmd_solve(const Flags& f) {
    const auto inst = geom::read_instance_file(f.input);
    const auto r = solve(inst, solve_options(f));
    print_stats(inst);
    print_ledger(inst, r.ledger);
    fmt::print(text_out, "skeleton: {} faces, {}\n", r.faces.size(), r.solvable ? "solvable (polygon DP per face)" : "not solvable");
    fmt::print(text_out, "lp: {} rows, {} columns, {} triangles eliminated by the ledger ({:.1f}%)\n", r.lp.num_rows(),
               r.lp.num_columns(), r.eliminated_triangles, 100.0 * r.eliminated_fraction());
    fmt::print(text_out, "lp objective: {:.9f} ({})\n", r.lp_objective(),
               r.kind == lp::SolutionKind::Integral ? "integral" : "fractional");
    if (r.oracle_cost) fmt::print(text_out, "oracle MWT:   {:.9f} ({} optima)\n", *r.oracle_cost, r.oracle_optima);
    fmt::print(text_out, "integer cost: {:.9f} (from {})\n", r.integer_cost, r.integer_source);
    fmt::print(text_out, "gap:          {:.9f}\n", r.gap);
    spdlog::info("times ms: heuristics {:.1f}, dp {:.1f}, lp {:.1f}, oracle {:.1f}, rounding {:.1f}",
                 r.times.heuristics_ms, r.times.dp_ms, r.times.lp_ms, r.times.oracle_ms, r.times.rounding_ms);
    emit_json(f, report::solve_report(inst, r));
    if (!f.svg.empty()) {
        auto out = open_output(f.svg);
        report::render_solution(out, inst, &r.ledger, &r.lp_solution.x, r.triangles);
    }
    return r.kind == lp::SolutionKind::Integral ? kExitIntegral : kExitFractional;
}

int cmd_round(const Flags& f) {
    const auto inst = geom::read_instance_file(f.input);
    const auto opts = solve_options(f);
    const auto lp = lp::build_lp(inst);
    const auto sol = lp::solve_to_extreme_point(inst, lp, opts.simplex);
    const auto cls = lp::classify_solution(inst, sol.x);
    const auto ledger = heur::run_closure(inst, opts.heuristics);
    auto partition = round::build_convex_partition(inst, opts.partition, &ledger);
    const auto r = round::transpose_solution(inst, sol.x, std::move(partition), {f.seed});
    const auto& L = r.ledger;
    const auto& c = r.checks;
    print_stats(inst);
    fmt::print(text_out, "partition ({}): {} faces, length {:.9f}, sigma {:.6f}\n", f.partition, r.partition.faces.size(),
               L.partition_length, L.sigma);
    fmt::print(text_out, "c(X) = {:.9f} ({}), sum_f c(X^f) = {:.9f}, bound 3|P| + 12 sigma c(X) = {:.9f} [{}]\n",
               L.fractional_cost, cls.kind == lp::SolutionKind::Integral ? "integral" : "fractional",
               L.sum_transposed, L.bound, L.holds() ? "holds" : "VIOLATED");
    fmt::print(text_out, "rounded triangulation cost {:.9f}\n", r.rounded_cost);
    fmt::print(text_out, "checks: blanket {:.2e}/{:.2e}, transfer {:.2e}, feasibility {:.2e}, two-face max {}, "
               "length {}/{} violations ({} on diagonals), hexagon {} violations\n",
               c.blanket_sum_error, c.blanket_reconstruction_error, c.transfer_mismatch, c.feasibility_error,
               c.max_faces_with_area, c.length_violations, c.length_checks, c.length_violations_diagonal,
               c.hexagon_violations);
    json doc = {{"schema", report::kSchemaVersion},
                {"command", "round"},
                {"instance", report::instance_stats(inst)},
                {"partition_strategy", f.partition},
                {"seed", f.seed},
                {"lp_kind", cls.kind == lp::SolutionKind::Integral ? "integral" : "fractional"},
                {"rounding", report::rounding_report(inst, r)}};
    emit_json(f, doc);
    if (!f.svg.empty()) {
        // Largest-weight blanket of the face with the most blankets.
        std::size_t best = 0;
        for (std::size_t i = 0; i < r.faces.size(); ++i)
            if (r.faces[i].blankets.size() > r.faces[best].blankets.size()) best = i;
        auto out = open_output(f.svg);
        report::render_blanket(out, inst, r.partition.faces[best], r.faces[best].blankets.front());
    }
    if (!L.holds()) throw InvariantError("cost bound violated: " + std::to_string(L.sum_transposed) + " > " +
                                         std::to_string(L.bound));
    return cls.kind == lp::SolutionKind::Integral ? kExitIntegral : kExitFractional;
}

int cmd_heuristics(const Flags& f) {
    const auto inst = geom::read_instance_file(f.input);
    const auto opts = solve_options(f);
    opts.heuristics.validate();
    const auto ledger = heur::run_closure(inst, opts.heuristics);
    const auto sk = heur::skeleton_faces(ledger, inst);
    print_stats(inst);
    print_ledger(inst, ledger);
    for (EdgeId e : ledger.edges_with(heur::EdgeStatus::ForcedIn))
        if (!inst.edge(e).is_boundary) fmt::print(text_out, "  forced in: {}-{} ({})\n", inst.edge(e).u, inst.edge(e).v,
                                                  heur::to_string(ledger.provenance(e).rule));
    fmt::print(text_out, "skeleton: {} faces, {}\n", sk.faces.size(), sk.solvable ? "solvable" : "not solvable");
    emit_json(f, {{"schema", report::kSchemaVersion},
                  {"command", "heuristics"},
                  {"instance", report::instance_stats(inst)},
                  {"summary", report::ledger_summary(inst, ledger)},
                  {"solvable", sk.solvable},
                  {"edges", report::edge_ledger(inst, ledger)}});
    if (!f.svg.empty()) {
        auto out = open_output(f.svg);
        report::render_solution(out, inst, &ledger, nullptr, {});
    }
    return kExitIntegral;
}

int cmd_lp(const Flags& f) {
    const auto inst = geom::read_instance_file(f.input);
    const auto opts = solve_options(f);
    std::optional<heur::EdgeStatusLedger> ledger;
    if (!f.no_ledger) ledger = heur::run_closure(inst, opts.heuristics);
    const heur::EdgeStatusLedger* lp_ledger = ledger ? &*ledger : nullptr;
    const auto lp = lp::build_lp(inst, lp_ledger);
    if (!f.export_lp.empty()) {
        auto out = open_output(f.export_lp);
        lp::export_lp(out, inst, lp);
    }
    lp::LpSolution sol;
    if (!f.import_solution.empty()) {
        std::ifstream in(f.import_solution);
        if (!in) throw InputError("cannot open " + f.import_solution);
        sol.x = lp::import_solution(in, inst, lp);
        sol.info.rows = lp.num_rows();
        sol.info.columns = lp.num_columns();
        sol.info.max_residual = lp::max_residual(lp, sol.x);
    } else {
        sol = lp::solve_to_extreme_point(inst, lp, opts.simplex, lp_ledger);
    }
    const auto cls = lp::classify_solution(inst, sol.x);
    print_stats(inst);
    fmt::print(text_out, "lp{}: {} rows, {} columns\n", lp_ledger ? " (ledger-reduced)" : "", lp.num_rows(), lp.num_columns());
    fmt::print(text_out, "objective {:.9f}, {}, max residual {:.2e}\n", sol.x.objective,
               cls.kind == lp::SolutionKind::Integral ? "integral" : "fractional", sol.info.max_residual);
    json doc = {{"schema", report::kSchemaVersion},
                {"command", "lp"},
                {"instance", report::instance_stats(inst)},
                {"ledger_reduced", lp_ledger != nullptr},
                {"lp", report::lp_info(lp, sol)},
                {"kind", cls.kind == lp::SolutionKind::Integral ? "integral" : "fractional"},
                {"solution", report::weights(inst, sol.x)}};
    emit_json(f, doc);
    if (!f.svg.empty()) {
        auto out = open_output(f.svg);
        report::render_solution(out, inst, lp_ledger, &sol.x, cls.triangles);
    }
    return cls.kind == lp::SolutionKind::Integral ? kExitIntegral : kExitFractional;
}

int cmd_oracle(const Flags& f) {
    const auto inst = geom::read_instance_file(f.input);
    const auto set = oracle::enumerate_triangulations(inst, f.guard);
    print_stats(inst);
    fmt::print(text_out, "{} triangulations, minimum cost {:.9f}, {} optima\n", set.all.size(), set.optima.front().cost,
               set.optima.size());
    json optima = json::array();
    for (const auto& t : set.optima) optima.push_back(report::triangle_list(inst, t.triangles));
    json doc = {{"schema", report::kSchemaVersion},
                {"command", "oracle"},
                {"instance", report::instance_stats(inst)},
                {"triangulations", set.all.size()},
                {"cost", set.optima.front().cost},
                {"optima", optima}};
    if (f.list) {
        json all = json::array();
        for (const auto& t : set.all) all.push_back({{"cost", t.cost}, {"triangles", report::triangle_list(inst, t.triangles)}});
        doc["all"] = all;
    }
    emit_json(f, doc);
    if (!f.svg.empty()) {
        auto out = open_output(f.svg);
        report::render_solution(out, inst, nullptr, nullptr, set.optima.front().triangles);
    }
    return kExitIntegral;
}

struct GenerateFlags {
    std::size_t n = 20;
    std::uint64_t seed = 1;
    long long lo = 0, hi = 100;
    std::size_t regular = 0;
    int decimals = 9;
    bool polygon = false;
    std::string out;
};

int cmd_generate(const GenerateFlags& g) {
    std::ostringstream text;
    if (g.regular > 0) {
        text << geom::regular_polygon_with_center(g.regular, g.decimals);
    } else if (g.polygon) {
        const auto p = geom::random_simple_polygon(g.n, g.seed, g.lo, g.hi);
        text << "# simple polygon, boundary in file order\n";
        for (PointId v : p.boundary) text << geom::to_string(p.instance.point(v).x) << ' '
                                          << geom::to_string(p.instance.point(v).y) << '\n';
    } else {
        for (auto [x, y] : geom::random_points(g.n, g.seed, g.lo, g.hi)) text << x << ' ' << y << '\n';
    }
    if (g.out.empty()) {
        std::cout << text.str();
    } else {
        auto out = open_output(g.out);
        out << text.str();
    }
    return kExitIntegral;
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Minimum-weight triangulation workbench"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", f.input, "Instance file (one 'x y' pair per line)")->required()->check(CLI::ExistingFile);
        sub->add_option("--tolerance", f.tolerance, "Simplex feasibility/optimality tolerance")->capture_default_str();
        sub->add_option("--seed", f.seed, "Seed for sampling")->capture_default_str();
        sub->add_option("--rules", f.rules, "Heuristic rules: comma list of name, +name, -name, all, none");
        sub->add_option("--json", f.json_path, "Write the JSON report here ('-' for stdout)");
        sub->add_option("--svg", f.svg, "Write an SVG rendering here");
        sub->add_option("--partition", f.partition, "Convex partition strategy")
            ->check(CLI::IsMember({"hm", "fan"}))
            ->capture_default_str();
    };

    auto* solve_cmd = app.add_subcommand("solve", "Heuristics, then polygon DP or ledger-reduced LP");
    common(solve_cmd);
    solve_cmd->add_flag("--oracle", f.oracle, "Cross-check against the brute-force oracle");
    solve_cmd->add_option("--guard", f.guard, "Oracle size guard")->capture_default_str();

    auto* round_cmd = app.add_subcommand("round", "Transpose the LP optimum into a convex partition");
    common(round_cmd);

    auto* heur_cmd = app.add_subcommand("heuristics", "Run the heuristic closure");
    common(heur_cmd);

    auto* lp_cmd = app.add_subcommand("lp", "Build and solve the triangulation LP");
    common(lp_cmd);
    lp_cmd->add_option("--export-lp", f.export_lp, "Write the LP in CPLEX LP format");
    lp_cmd->add_option("--import-solution", f.import_solution, "Read 'column value' lines instead of solving");
    lp_cmd->add_flag("--no-ledger", f.no_ledger, "Solve the full LP without heuristic reductions");

    auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate every triangulation");
    common(oracle_cmd);
    oracle_cmd->add_option("--guard", f.guard, "Size guard")->capture_default_str();
    oracle_cmd->add_flag("--list", f.list, "Include every triangulation in the JSON");

    GenerateFlags g;
    auto* gen_cmd = app.add_subcommand("generate", "Write a seeded random instance");
    gen_cmd->add_option("-n", g.n, "Number of points")->capture_default_str();
    gen_cmd->add_option("--seed", g.seed, "Seed")->capture_default_str();
    gen_cmd->add_option("--lo", g.lo, "Lowest coordinate")->capture_default_str();
    gen_cmd->add_option("--hi", g.hi, "Highest coordinate")->capture_default_str();
    gen_cmd->add_flag("--polygon", g.polygon, "Random simple polygon in boundary order");
    gen_cmd->add_option("--regular", g.regular, "Regular k-gon of radius 1 plus its center");
    gen_cmd->add_option("--decimals", g.decimals, "Digits for --regular")->capture_default_str();
    gen_cmd->add_option("-o,--out", g.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    if (f.json_path == "-") text_out = stderr;
    try {
        if (*solve_cmd) return cmd_solve(f);
        if (*round_cmd) return cmd_round(f);
        if (*heur_cmd) return cmd_heuristics(f);
        if (*lp_cmd) return cmd_lp(f);
        if (*oracle_cmd) return cmd_oracle(f);
        if (*gen_cmd) return cmd_generate(g);
    } catch (const InputError& e) {
        spdlog::error("{}", e.what());
        return kExitInput;
    } catch (const InvariantError& e) {
        spdlog::error("invariant violated: {}", e.what());
        return kExitInvariant;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitInvariant;
    }
    return kExitInput;
}
