#pragma once

// Graphviz output. Reduced vectors are numbered from 1 in discovery order.

#include <set>
#include <sstream>
#include <string>

#include "loop_classes.hpp"

namespace ftm {

inline std::string reduced_label(const ReducedVector& r) {
    std::string s = "(" + r.length.str() + ", (";
    for (size_t i = 0; i < r.neighbours.size(); ++i) s += (i ? ", " : "") + r.neighbours[i].str();
    return s + "))";
}

inline std::string reduced_diagram_dot(const FiniteTypeStructure& st, const Decomposition& d) {
    std::set<int> ess(d.essential_reduced.begin(), d.essential_reduced.end());
    std::ostringstream os;
    os << "digraph reduced {\n  node [shape=box];\n";
    for (size_t r = 0; r < st.reduced.size(); ++r) {
        os << "  v" << r + 1 << " [label=\"" << r + 1 << ": " << reduced_label(st.reduced[r]) << "\"";
        if (ess.count(static_cast<int>(r))) os << ", style=filled, fillcolor=lightgrey";
        os << "];\n";
    }
    for (size_t r = 0; r < st.reduced.size(); ++r) {
        const auto& ch = st.expansion[r];
        for (size_t i = 0; i < ch.size(); ++i)
            os << "  v" << r + 1 << " -> v" << st.reduced_of(ch[i].child) + 1 << " [label=\"" << i + 1 << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string triple_label(const Triple& t) {
    auto one = [](int r) { return r < 0 ? std::string("X") : std::to_string(r + 1); };
    return "[" + one(t.left) + "," + one(t.centre) + "," + one(t.right) + "]";
}

inline std::string triple_diagram_dot(const TripleDiagram& g) {
    std::set<int> ess;
    for (int c : g.essential_classes)
        for (int v : g.components[c]) ess.insert(v);
    std::ostringstream os;
    os << "digraph triples {\n  node [shape=box];\n";
    for (size_t v = 0; v < g.nodes.size(); ++v) {
        os << "  t" << v << " [label=\"" << triple_label(g.nodes[v]) << "\"";
        if (ess.count(static_cast<int>(v))) os << ", style=filled, fillcolor=lightgrey";
        os << "];\n";
    }
    for (size_t v = 0; v < g.nodes.size(); ++v)
        for (const auto& e : g.out[v]) {
            std::string tag = std::string(e.leftmost ? "L" : "") + (e.rightmost ? "R" : "");
            os << "  t" << v << " -> t" << e.to << " [label=\"" << e.edge + 1 << (tag.empty() ? "" : " " + tag) << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace ftm
