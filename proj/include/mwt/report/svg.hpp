#pragma once

// Minimal SVG rendering. ForcedIn edges are solid, ForcedOut edges are not
// drawn, fractional edges get opacity X_e.

#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/closure.hpp"
#include "mwt/lp/triangulation_lp.hpp"
#include "mwt/rounding/rounding.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace mwt::report {

class SvgCanvas {
public:
    explicit SvgCanvas(const Instance& inst, double size = 800.0) : inst_(inst), size_(size) {
        for (PointId p = 0; p < inst.size(); ++p) {
            const auto [x, y] = inst.to_double(p);
            lo_x_ = std::min(lo_x_, x), hi_x_ = std::max(hi_x_, x);
            lo_y_ = std::min(lo_y_, y), hi_y_ = std::max(hi_y_, y);
        }
        const double span = std::max({hi_x_ - lo_x_, hi_y_ - lo_y_, 1e-12});
        scale_ = (size_ - 2 * kPad) / span;
    }

    void line(PointId a, PointId b, const std::string& color, double width, double opacity = 1.0,
              bool dashed = false) {
        const auto [x1, y1] = map(a);
        const auto [x2, y2] = map(b);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"%s\" stroke-width=\"%.2f\" "
                      "stroke-opacity=\"%.4f\"%s/>\n",
                      x1, y1, x2, y2, color.c_str(), width, opacity, dashed ? " stroke-dasharray=\"6,4\"" : "");
        body_ += buf;
    }

    void polygon(std::span<const PointId> poly, const std::string& fill, double opacity) {
        std::string pts;
        char buf[64];
        for (PointId p : poly) {
            const auto [x, y] = map(p);
            std::snprintf(buf, sizeof buf, "%.3f,%.3f ", x, y);
            pts += buf;
        }
        body_ += "<polygon points=\"" + pts + "\" fill=\"" + fill + "\" fill-opacity=\"" + std::to_string(opacity) +
                 "\" stroke=\"none\"/>\n";
    }

    void points() {
        char buf[160];
        for (PointId p = 0; p < inst_.size(); ++p) {
            const auto [x, y] = map(p);
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"black\"/>\n", x, y);
            body_ += buf;
        }
    }

    void write(std::ostream& out) const {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_ << "\" height=\"" << size_
            << "\" viewBox=\"0 0 " << size_ << ' ' << size_ << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_ << "</svg>\n";
    }

private:
    static constexpr double kPad = 20.0;

    std::pair<double, double> map(PointId p) const {
        const auto [x, y] = inst_.to_double(p);
        return {kPad + (x - lo_x_) * scale_, size_ - kPad - (y - lo_y_) * scale_};
    }

    const Instance& inst_;
    double size_;
    double lo_x_ = 1e300, hi_x_ = -1e300, lo_y_ = 1e300, hi_y_ = -1e300;
    double scale_ = 1.0;
    std::string body_;
};

// Ledger plus a solution: integral triangles in black, fractional edges in
// blue with opacity X_e, ForcedIn edges in solid red on top.
inline void render_solution(std::ostream& out, const Instance& inst, const heur::EdgeStatusLedger* ledger,
                            const lp::FractionalTriangulation* x, std::span<const TriangleId> triangles) {
    SvgCanvas svg(inst);
    if (x)
        for (EdgeId e = 0; e < inst.edges().size(); ++e) {
            const double w = std::clamp(x->edge_weights[e], 0.0, 1.0);
            if (w <= 1e-9 || (ledger && ledger->forced_out(e))) continue;
            svg.line(inst.edge(e).u, inst.edge(e).v, w >= 1.0 - 1e-7 ? "black" : "#1f5fbf", 1.5, w);
        }
    for (EdgeId e : oracle::edges_of(inst, triangles)) svg.line(inst.edge(e).u, inst.edge(e).v, "black", 1.5);
    if (ledger)
        for (EdgeId e : ledger->edges_with(heur::EdgeStatus::ForcedIn)) svg.line(inst.edge(e).u, inst.edge(e).v, "#c0392b", 2.5);
    svg.points();
    svg.write(out);
}

// One blanket over one face: the blanket's triangles, the face, and the
// transposed partition of the face (dashed).
inline void render_blanket(std::ostream& out, const Instance& inst, const Face& face, const round::Blanket& b) {
    SvgCanvas svg(inst);
    svg.polygon(face.boundary, "#f5c518", 0.35);
    for (TriangleId t : b.triangles) {
        const auto& tri = inst.triangle(t);
        for (int k = 0; k < 3; ++k) svg.line(tri.v[k], tri.v[(k + 1) % 3], "#1f5fbf", 1.2);
    }
    const auto image = round::transpose_blanket(inst, face, b);
    for (const auto& [a, c] : image.edge_images) svg.line(a, c, "#c0392b", 2.5, 1.0, true);
    const auto& P = face.boundary;
    for (std::size_t i = 0; i < P.size(); ++i) svg.line(P[i], P[(i + 1) % P.size()], "black", 2.0);
    svg.points();
    svg.write(out);
}

} // namespace mwt::report
