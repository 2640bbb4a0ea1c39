// Solve a small instance end to end and print what each stage decided.

#include "mwt/geometry/generate.hpp"
#include "mwt/geometry/io.hpp"
#include "mwt/pipeline.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    using namespace mwt;
    const Instance inst = argc > 1 ? geom::read_instance_file(argv[1])
                                   : geom::parse_instance(geom::regular_polygon_with_center(13));
    const SolveReport r = solve(inst);
    std::printf("%zu points, %zu potential edges, %zu empty triangles\n", r.points, r.potential_edges,
                r.empty_triangles);
    std::printf("ledger: %zu forced in, %zu forced out\n", r.ledger.count(heur::EdgeStatus::ForcedIn),
                r.ledger.count(heur::EdgeStatus::ForcedOut));
    std::printf("skeleton %s, LP objective %.9f (%s)\n", r.solvable ? "solvable" : "not solvable",
                r.lp_objective(), r.kind == lp::SolutionKind::Integral ? "integral" : "fractional");
    std::printf("integer cost %.9f from %s, gap %.6f\n", r.integer_cost, r.integer_source.c_str(), r.gap);
    for (TriangleId t : r.triangles) {
        const auto& v = inst.triangle(t).v;
        std::printf("  triangle %u %u %u\n", v[0], v[1], v[2]);
    }
}
