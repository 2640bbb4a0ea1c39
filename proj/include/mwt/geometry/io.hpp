#pragma once

// Instance text format: one point per line, "x y", each coordinate a
// decimal or a fraction p/q. Lines starting with '#' are comments.

#include "mwt/error.hpp"
#include "mwt/geometry/instance.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace mwt::geom {

inline Instance read_instance(std::istream& in) {
    std::vector<std::pair<Rational, Rational>> coords;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tokens(line);
        std::string xs, ys, extra;
        tokens >> xs >> ys;
        if (ys.empty()) throw ParseError(line_no, "expected two coordinates");
        if (tokens >> extra) throw ParseError(line_no, "unexpected token '" + extra + "'");
        auto x = parse_rational(xs);
        if (!x) throw ParseError(line_no, "bad coordinate '" + xs + "'");
        auto y = parse_rational(ys);
        if (!y) throw ParseError(line_no, "bad coordinate '" + ys + "'");
        coords.emplace_back(std::move(*x), std::move(*y));
    }
    return Instance::from_rationals(std::move(coords));
}

inline Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_instance(in);
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
    for (const auto& p : inst.points()) out << to_string(p.x) << ' ' << to_string(p.y) << '\n';
}

} // namespace mwt::geom
