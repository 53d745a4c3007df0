#pragma once

// Strongly connected structure of the characteristic vector graph: loop
// classes, the essential class, positivity properties of its matrices and
// the diagram of (left neighbour, interval, right neighbour) triples.

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "transition.hpp"

namespace ftm {

// Tarjan's algorithm, iterative. Components come out in reverse
// topological order of the condensation.
inline std::vector<std::vector<int>> strongly_connected(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on(n, false);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    for (int s = 0; s < n; ++s) {
        if (index[s] >= 0) continue;
        std::vector<std::pair<int, size_t>> call{{s, 0}};
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on[s] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[v].size()) {
                int w = adj[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = true;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comps;
}

struct Decomposition {
    std::vector<std::vector<int>> components;  // sorted by smallest member
    std::vector<int> component_of;             // per vector
    std::vector<int> loop_classes;             // components with an internal edge
    int essential = -1;                        // the component closed under taking children
    std::vector<bool> essential_vector;        // per vector
    std::vector<int> essential_reduced;        // reduced ids of essential vectors, increasing

    bool is_essential(int cv) const { return essential_vector[cv]; }
    const std::vector<int>& essential_class() const { return components[essential]; }
};

inline std::vector<std::vector<int>> child_graph(const FiniteTypeStructure& st) {
    std::vector<std::vector<int>> adj(st.size());
    for (size_t v = 0; v < st.size(); ++v)
        for (const auto& c : st.children(static_cast<int>(v))) adj[v].push_back(c.child);
    return adj;
}

inline Decomposition decompose(const FiniteTypeStructure& st) {
    st.require_saturated();
    auto adj = child_graph(st);
    Decomposition d;
    d.components = strongly_connected(adj);
    std::sort(d.components.begin(), d.components.end());
    d.component_of.assign(st.size(), -1);
    for (size_t c = 0; c < d.components.size(); ++c)
        for (int v : d.components[c]) d.component_of[v] = static_cast<int>(c);
    std::vector<int> closed;
    for (size_t c = 0; c < d.components.size(); ++c) {
        bool internal = false, leaves = false;
        for (int v : d.components[c])
            for (int w : adj[v]) {
                if (d.component_of[w] == static_cast<int>(c)) internal = true;
                else leaves = true;
            }
        if (internal) d.loop_classes.push_back(static_cast<int>(c));
        if (internal && !leaves) closed.push_back(static_cast<int>(c));
    }
    if (closed.size() != 1)
        throw Error("expected exactly one essential class, found " + std::to_string(closed.size()));
    d.essential = closed[0];
    d.essential_vector.assign(st.size(), false);
    std::set<int> red;
    for (int v : d.components[d.essential]) {
        d.essential_vector[v] = true;
        red.insert(st.reduced_of(v));
    }
    d.essential_reduced.assign(red.begin(), red.end());
    return d;
}

struct RowFailure {
    int cv, edge, row;
};

// Every essential primitive matrix has a nonzero entry in every row.
inline std::vector<RowFailure> positive_row_failures(const FiniteTypeStructure& st, const Decomposition& d) {
    std::vector<RowFailure> out;
    for (int v : d.essential_class()) {
        const auto& ch = st.children(v);
        for (size_t e = 0; e < ch.size(); ++e) {
            const auto& L = ch[e].letters;
            for (int j = 0; j < L.rows; ++j) {
                bool any = false;
                for (int k = 0; k < L.cols; ++k) any = any || L.at(j, k) >= 0;
                if (!any) out.push_back({v, static_cast<int>(e), j});
            }
        }
    }
    return out;
}

inline bool positive_row_check(const FiniteTypeStructure& st, const Decomposition& d) {
    return positive_row_failures(st, d).empty();
}

// Shortest path from one vector to another whose matrix product is
// positive and which is neither all leftmost nor all rightmost descents.
// Searches over zero patterns, so it is exact.
inline std::optional<std::vector<int>> find_positive_path(const FiniteTypeStructure& st, int from, int to,
                                                          size_t max_states = 2000000) {
    struct State {
        int cv;
        std::vector<bool> pattern;  // rows(from) x cols(cv)
        bool all_left, all_right;
    };
    int rows = static_cast<int>(st.rv(from).neighbours.size());
    auto encode = [](const State& s) {
        std::string k = std::to_string(s.cv) + (s.all_left ? "L" : "l") + (s.all_right ? "R" : "r") + ":";
        for (bool b : s.pattern) k += b ? '1' : '0';
        return k;
    };
    std::vector<State> states;
    std::vector<std::pair<int, int>> parent;  // (state, edge)
    std::map<std::string, int> seen;
    State s0{from, std::vector<bool>(static_cast<size_t>(rows) * rows, false), true, true};
    for (int i = 0; i < rows; ++i) s0.pattern[static_cast<size_t>(i) * rows + i] = true;
    states.push_back(s0);
    parent.push_back({-1, -1});
    seen[encode(s0)] = 0;
    for (size_t head = 0; head < states.size(); ++head) {
        if (states.size() > max_states) return std::nullopt;
        State cur = states[head];
        int cols = static_cast<int>(st.rv(cur.cv).neighbours.size());
        const auto& ch = st.children(cur.cv);
        for (size_t e = 0; e < ch.size(); ++e) {
            const auto& L = ch[e].letters;
            State nx{ch[e].child, std::vector<bool>(static_cast<size_t>(rows) * L.cols, false),
                     cur.all_left && ch[e].abuts_left, cur.all_right && ch[e].abuts_right};
            for (int i = 0; i < rows; ++i)
                for (int k = 0; k < cols; ++k)
                    if (cur.pattern[static_cast<size_t>(i) * cols + k])
                        for (int j = 0; j < L.cols; ++j)
                            if (L.at(k, j) >= 0) nx.pattern[static_cast<size_t>(i) * L.cols + j] = true;
            std::string key = encode(nx);
            if (seen.count(key)) continue;
            seen[key] = static_cast<int>(states.size());
            states.push_back(nx);
            parent.push_back({static_cast<int>(head), static_cast<int>(e)});
            bool full = std::all_of(nx.pattern.begin(), nx.pattern.end(), [](bool b) { return b; });
            if (nx.cv == to && full && !nx.all_left && !nx.all_right) {
                std::vector<int> edges;
                for (int at = static_cast<int>(states.size()) - 1; parent[at].first >= 0; at = parent[at].first)
                    edges.push_back(parent[at].second);
                std::reverse(edges.begin(), edges.end());
                return edges;
            }
        }
    }
    return std::nullopt;
}

// Triples of reduced vectors (left neighbour, interval, right neighbour);
// -1 stands for a missing neighbour.
struct Triple {
    int left, centre, right;
    auto operator<=>(const Triple&) const = default;
};

struct TripleEdge {
    int to;
    int edge;  // position of the centre's child
    bool leftmost, rightmost;
};

struct TripleDiagram {
    std::vector<Triple> nodes;  // nodes[0] is the root triple
    std::vector<std::vector<TripleEdge>> out;
    std::vector<std::vector<int>> components;
    std::vector<int> component_of;
    std::vector<int> loop_classes;       // components with an internal edge
    std::vector<int> essential_classes;  // closed loop classes made only of essential reduced vectors
    std::vector<int> maximal_loop_classes;  // loop classes other than the essential ones

    int find(const Triple& t) const {
        auto it = std::find(nodes.begin(), nodes.end(), t);
        return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
    }
};

inline TripleDiagram build_triple_diagram(const FiniteTypeStructure& st, const Decomposition& d) {
    TripleDiagram g;
    std::map<Triple, int> index;
    auto rchildren = [&](int red) -> const std::vector<ChildRecord>& { return st.expansion[red]; };
    auto add = [&](const Triple& t) {
        auto [it, fresh] = index.emplace(t, static_cast<int>(g.nodes.size()));
        if (fresh) {
            g.nodes.push_back(t);
            g.out.emplace_back();
        }
        return it->second;
    };
    add({-1, st.reduced_of(st.root()), -1});
    for (size_t at = 0; at < g.nodes.size(); ++at) {
        Triple t = g.nodes[at];
        const auto& ch = rchildren(t.centre);
        int n = static_cast<int>(ch.size());
        for (int i = 0; i < n; ++i) {
            int left = -1, right = -1;
            if (i > 0 && !ch[i].gap_before) left = st.reduced_of(ch[i - 1].child);
            if (i == 0 && ch[i].abuts_left && t.left >= 0) {
                const auto& lc = rchildren(t.left);
                if (!lc.empty() && lc.back().abuts_right) left = st.reduced_of(lc.back().child);
            }
            if (i + 1 < n && !ch[i + 1].gap_before) right = st.reduced_of(ch[i + 1].child);
            if (i + 1 == n && ch[i].abuts_right && t.right >= 0) {
                const auto& rc = rchildren(t.right);
                if (!rc.empty() && rc.front().abuts_left) right = st.reduced_of(rc.front().child);
            }
            int to = add({left, st.reduced_of(ch[i].child), right});
            g.out[at].push_back({to, i, ch[i].abuts_left, ch[i].abuts_right});
        }
    }
    std::vector<std::vector<int>> adj(g.nodes.size());
    for (size_t v = 0; v < g.nodes.size(); ++v)
        for (const auto& e : g.out[v]) adj[v].push_back(e.to);
    g.components = strongly_connected(adj);
    std::sort(g.components.begin(), g.components.end());
    g.component_of.assign(g.nodes.size(), -1);
    for (size_t c = 0; c < g.components.size(); ++c)
        for (int v : g.components[c]) g.component_of[v] = static_cast<int>(c);
    std::set<int> ess(d.essential_reduced.begin(), d.essential_reduced.end());
    auto essential_or_missing = [&](int r) { return r < 0 || ess.count(r) > 0; };
    for (size_t c = 0; c < g.components.size(); ++c) {
        bool internal = false, leaves = false, all_ess = true;
        for (int v : g.components[c]) {
            const Triple& t = g.nodes[v];
            all_ess = all_ess && t.left >= 0 && t.right >= 0 && ess.count(t.centre) &&
                      essential_or_missing(t.left) && essential_or_missing(t.right);
            for (int w : adj[v]) {
                if (g.component_of[w] == static_cast<int>(c)) internal = true;
                else leaves = true;
            }
        }
        if (!internal) continue;
        g.loop_classes.push_back(static_cast<int>(c));
        if (!leaves && all_ess) g.essential_classes.push_back(static_cast<int>(c));
        else g.maximal_loop_classes.push_back(static_cast<int>(c));
    }
    return g;
}

enum class PointClass { interior_essential, boundary_essential, essential_not_truly, non_essential, needs_more_depth };

inline const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::interior_essential: return "interior_essential";
        case PointClass::boundary_essential: return "boundary_essential";
        case PointClass::essential_not_truly: return "essential_not_truly";
        case PointClass::non_essential: return "non_essential";
        case PointClass::needs_more_depth: return "needs_more_depth";
    }
    return "?";
}

// Truly essential points are the interior essential points together with
// boundary points both of whose sides are essential (a missing side
// counts as essential).
inline PointClass classify_truly_essential(const FiniteTypeStructure& st, const Decomposition& d,
                                           const PointLocation& loc) {
    enum { Dead, Ess, NonEss, Unknown };
    std::vector<int> status;
    bool endpoint = false;
    for (const auto& r : loc.reps) {
        int last = r.cvs.back();
        int s = Unknown;
        if (r.periodic()) {
            s = d.is_essential(r.cvs[r.period_start]) ? Ess : NonEss;
        } else if (d.is_essential(last)) {
            s = Ess;
        } else if (r.endpoint_level >= 0) {
            Representation chain = extreme_chain(st, last, r.endpoint_side);
            if (!chain.periodic()) s = Dead;
            else s = d.is_essential(chain.cvs[chain.period_start]) ? Ess : NonEss;
        }
        if (s != Dead) {
            status.push_back(s);
            endpoint = endpoint || r.endpoint_level >= 0;
        }
    }
    for (int s : status)
        if (s == Unknown) return PointClass::needs_more_depth;
    bool boundary = status.size() > 1 || endpoint;
    int ess = static_cast<int>(std::count(status.begin(), status.end(), Ess));
    if (!boundary) return ess ? PointClass::interior_essential : PointClass::non_essential;
    if (ess == static_cast<int>(status.size())) return PointClass::boundary_essential;
    return ess ? PointClass::essential_not_truly : PointClass::non_essential;
}

}  // namespace ftm
