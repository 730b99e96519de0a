#pragma once

#include <sstream>
#include <string>

#include "kmgrad/gcm.hpp"

namespace kmgrad {

namespace detail {

// Classical bonds have one entry -1 and the other -1..-3; everything else is
// printed with the raw pair (|a_ij|, |a_ji|).
inline std::string edge_glyph(long aij, long aji) {
    long p = -aij, q = -aji;
    if (p == 1 && q == 1) return "---";
    if (q == 1 && p <= 3) return "<=" + std::to_string(p) + "=";  // arrow toward the left vertex
    if (p == 1 && q <= 3) return "=" + std::to_string(q) + "=>";  // arrow toward the right vertex
    return "-(" + std::to_string(p) + "," + std::to_string(q) + ")-";
}

}  // namespace detail

// Text rendering: vertex line (with J marked by white circles when given)
// and one line per bond. The arrow points toward the shorter root.
inline std::string render_diagram(const GCM& g, const IndexSet& j_set = {}) {
    std::vector<bool> in_j(g.size(), false);
    for (Index j : j_set) in_j[j] = true;
    std::ostringstream out;
    out << "vertices:";
    for (Index i = 0; i < g.size(); ++i) {
        out << ' ';
        if (!j_set.empty()) out << (in_j[i] ? "○" : "●");
        out << g.labels()[i];
    }
    out << '\n';
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = i + 1; j < g.size(); ++j) {
            if (!g.linked(i, j)) continue;
            out << "  " << g.labels()[i] << ' '
                << detail::edge_glyph(g.entry(i, j), g.entry(j, i)) << ' ' << g.labels()[j]
                << '\n';
        }
    return out.str();
}

inline std::string render_dot(const GCM& g, const IndexSet& j_set = {}) {
    std::vector<bool> in_j(g.size(), false);
    for (Index j : j_set) in_j[j] = true;
    std::ostringstream out;
    out << "graph dynkin {\n  node [shape=circle];\n";
    for (Index i = 0; i < g.size(); ++i) {
        out << "  \"" << g.labels()[i] << '"';
        if (in_j[i]) out << " [style=\"\"]";
        else if (!j_set.empty()) out << " [style=filled fillcolor=black fontcolor=white]";
        out << ";\n";
    }
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = i + 1; j < g.size(); ++j) {
            if (!g.linked(i, j)) continue;
            out << "  \"" << g.labels()[i] << "\" -- \"" << g.labels()[j] << '"';
            if (g.entry(i, j) != -1 || g.entry(j, i) != -1)
                out << " [label=\"(" << -g.entry(i, j) << ',' << -g.entry(j, i) << ")\"]";
            out << ";\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace kmgrad
