#pragma once

// Net intervals and characteristic vectors. A net interval of level n is
// described, up to translation and scaling by rho^n, by its normalized
// length and the offsets of the level-n cylinders covering it. Adding the
// index among equal-length siblings makes the child relation a function.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ifs.hpp"

namespace ftm {

struct ReducedVector {
    FieldElement length;
    std::vector<FieldElement> neighbours;  // increasing

    std::string key() const {
        std::string s = length.key() + "|";
        for (const auto& v : neighbours) s += v.key() + ";";
        return s;
    }
};

struct CharacteristicVector {
    int reduced;
    int sibling;  // 1-based
};

// letter[j * cols + k] is the map index l with
// d_l = t + c_j - rho * a_k, or -1.
struct LetterMatrix {
    int rows = 0, cols = 0;
    std::vector<int> letter;
    int at(int j, int k) const { return letter[j * cols + k]; }
};

struct ChildRecord {
    int child;             // characteristic vector id
    FieldElement offset;   // left end, in the parent's normalized coordinates
    FieldElement end;      // right end, same coordinates
    bool gap_before;       // a piece missing the attractor precedes this child
    bool abuts_left;       // shares the parent's left endpoint
    bool abuts_right;      // shares the parent's right endpoint
    LetterMatrix letters;
};

struct ExploreOptions {
    size_t max_vectors = 100000;
    int max_level = 200;
};

class FiniteTypeStructure {
  public:
    IFSSystem ifs;
    std::vector<ReducedVector> reduced;
    std::vector<CharacteristicVector> vectors;            // 0 is the root [0,1]
    std::vector<std::vector<ChildRecord>> expansion;      // indexed by reduced id
    std::vector<int> level;                               // first level a vector was seen
    bool saturated = false;
    std::string limit_hit;

    int root() const { return 0; }
    size_t size() const { return vectors.size(); }
    int reduced_of(int cv) const { return vectors[cv].reduced; }
    const ReducedVector& rv(int cv) const { return reduced[vectors[cv].reduced]; }
    const std::vector<ChildRecord>& children(int cv) const { return expansion[vectors[cv].reduced]; }
    bool gap_after(int cv) const {
        const auto& ch = children(cv);
        return ch.empty() || !ch.back().abuts_right;
    }
    int find(const ReducedVector& r, int sibling) const {
        auto it = reduced_index_.find(r.key());
        if (it == reduced_index_.end()) return -1;
        auto jt = full_index_.find({it->second, sibling});
        return jt == full_index_.end() ? -1 : jt->second;
    }
    int find_reduced(const ReducedVector& r) const {
        auto it = reduced_index_.find(r.key());
        return it == reduced_index_.end() ? -1 : it->second;
    }

    void require_saturated() const {
        if (!saturated) throw NotProvenFiniteType("finite type not proven: " + limit_hit);
    }

    // bookkeeping used while exploring and when loading a cache
    int intern_reduced(const ReducedVector& r) {
        auto [it, inserted] = reduced_index_.emplace(r.key(), static_cast<int>(reduced.size()));
        if (inserted) {
            reduced.push_back(r);
            expansion.emplace_back();
            expanded_.push_back(false);
        }
        return it->second;
    }
    std::pair<int, bool> intern(int red, int sibling, int lvl) {
        auto [it, inserted] = full_index_.emplace(std::make_pair(red, sibling), static_cast<int>(vectors.size()));
        if (inserted) {
            vectors.push_back({red, sibling});
            level.push_back(lvl);
        }
        return {it->second, inserted};
    }
    bool is_expanded(int red) const { return expanded_[red]; }
    void mark_expanded(int red) { expanded_[red] = true; }

  private:
    std::unordered_map<std::string, int> reduced_index_;
    std::map<std::pair<int, int>, int> full_index_;
    std::vector<bool> expanded_;
};

namespace detail {

struct RawChild {
    ReducedVector rv;
    FieldElement offset, end;
    bool gap_before, abuts_left, abuts_right;
    LetterMatrix letters;
};

class Expander {
  public:
    explicit Expander(const IFSSystem& s)
        : s_(s), rho_(s.rho), inv_rho_(s.rho.inverse()), zero_(s.field->constant(0)) {
        for (int e = 0; e < s.num_maps(); ++e) letter_of_[s.translations[e].key()] = e;
    }

    // Does the open interval (0, len), covered by cylinders at the given
    // offsets and containing no cylinder endpoint, meet the attractor?
    bool meets_attractor(FieldElement len, std::vector<FieldElement> nb) {
        std::vector<std::string> seen;
        while (true) {
            std::string k = ReducedVector{len, nb}.key();
            auto it = memo_.find(k);
            if (it != memo_.end()) return remember(seen, it->second);
            seen.push_back(k);
            std::vector<FieldElement> next;
            for (const auto& c : nb) {
                for (const auto& d : s_.translations) {
                    FieldElement a = d - c, b = a + rho_;
                    if ((a > zero_ && a < len) || (b > zero_ && b < len)) return remember(seen, true);
                    if (a <= zero_ && b >= len) next.push_back((zero_ - a) * inv_rho_);
                }
            }
            if (next.empty()) return remember(seen, false);
            sort_unique(next);
            nb = std::move(next);
            len = len * inv_rho_;
        }
    }

    std::vector<RawChild> expand(const ReducedVector& parent) {
        const FieldElement& len = parent.length;
        std::vector<FieldElement> pts{zero_, len};
        for (const auto& c : parent.neighbours) {
            for (const auto& d : s_.translations) {
                FieldElement a = d - c, b = a + rho_;
                if (a > zero_ && a < len) pts.push_back(a);
                if (b > zero_ && b < len) pts.push_back(b);
            }
        }
        sort_unique(pts);
        std::vector<RawChild> out;
        bool gap = false;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const FieldElement& u = pts[i];
            const FieldElement& w = pts[i + 1];
            std::vector<FieldElement> nb;
            for (const auto& c : parent.neighbours) {
                for (const auto& d : s_.translations) {
                    FieldElement a = d - c;
                    if (a <= u && a + rho_ >= w) nb.push_back((u - a) * inv_rho_);
                }
            }
            sort_unique(nb);
            FieldElement clen = (w - u) * inv_rho_;
            if (nb.empty() || !meets_attractor(clen, nb)) {
                gap = true;
                continue;
            }
            RawChild rc{{clen, nb}, u, w, gap, u == zero_, w == len, {}};
            rc.letters.rows = static_cast<int>(parent.neighbours.size());
            rc.letters.cols = static_cast<int>(nb.size());
            rc.letters.letter.assign(rc.letters.rows * rc.letters.cols, -1);
            for (int j = 0; j < rc.letters.rows; ++j) {
                for (int k = 0; k < rc.letters.cols; ++k) {
                    FieldElement v = u + parent.neighbours[j] - rho_ * nb[k];
                    auto it = letter_of_.find(v.key());
                    if (it != letter_of_.end()) rc.letters.letter[j * rc.letters.cols + k] = it->second;
                }
            }
            out.push_back(std::move(rc));
            gap = false;
        }
        return out;
    }

    static void sort_unique(std::vector<FieldElement>& v) {
        std::sort(v.begin(), v.end(), FieldLess{});
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

  private:
    bool remember(const std::vector<std::string>& keys, bool v) {
        for (const auto& k : keys) memo_[k] = v;
        return v;
    }

    const IFSSystem& s_;
    FieldElement rho_, inv_rho_, zero_;
    std::unordered_map<std::string, int> letter_of_;
    std::unordered_map<std::string, bool> memo_;
};

}  // namespace detail

// Children of a reduced vector, in left-to-right order, without ids.
inline std::vector<detail::RawChild> expand_children(const IFSSystem& s, const ReducedVector& parent) {
    detail::Expander ex(s);
    return ex.expand(parent);
}

inline ReducedVector root_vector(const IFSSystem& s) {
    return {s.field->constant(1), {s.field->constant(0)}};
}

// Breadth-first generation of all characteristic vectors reachable from
// the root. saturated is false when a limit stopped the search.
inline FiniteTypeStructure explore(const IFSSystem& s, const ExploreOptions& opt = {}) {
    FiniteTypeStructure st;
    st.ifs = s;
    detail::Expander ex(s);
    int r0 = st.intern_reduced(root_vector(s));
    st.intern(r0, 1, 0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cv = queue.front();
        queue.pop_front();
        int red = st.vectors[cv].reduced;
        if (st.is_expanded(red)) continue;
        if (st.level[cv] >= opt.max_level) {
            st.limit_hit = "max_level " + std::to_string(opt.max_level) + " reached";
            return st;
        }
        auto raw = ex.expand(st.reduced[red]);
        std::map<std::string, int> count;
        std::vector<ChildRecord> recs;
        for (auto& rc : raw) {
            int sib = ++count[rc.rv.length.key()];
            int cred = st.intern_reduced(rc.rv);
            auto [id, fresh] = st.intern(cred, sib, st.level[cv] + 1);
            if (fresh) queue.push_back(id);
            recs.push_back({id, rc.offset, rc.end, rc.gap_before, rc.abuts_left, rc.abuts_right,
                            std::move(rc.letters)});
        }
        st.expansion[red] = std::move(recs);
        st.mark_expanded(red);
        if (st.size() > opt.max_vectors) {
            st.limit_hit = "max_vectors " + std::to_string(opt.max_vectors) + " exceeded";
            return st;
        }
    }
    st.saturated = true;
    return st;
}

// One symbolic descent through the net interval tree.
struct Representation {
    std::vector<int> cvs;    // cvs[0] is the root
    std::vector<int> edges;  // edges[i] is the position of cvs[i+1] among the children of cvs[i]
    int period_start = -1;   // if >= 0, the steps from period_start repeat with this period
    int period = 0;
    int endpoint_level = -1;  // first level where x is an endpoint of its interval
    int endpoint_side = 0;    // -1: left endpoint, +1: right endpoint

    bool periodic() const { return period_start >= 0; }
    int depth() const { return static_cast<int>(edges.size()); }
};

struct PointLocation {
    std::vector<Representation> reps;  // at most two, left to right
    bool boundary() const {
        return reps.size() > 1 || (!reps.empty() && reps[0].endpoint_level >= 0);
    }
};

namespace detail {

inline void extend_periodic(Representation& r, int depth) {
    while (r.depth() < depth) {
        int i = r.depth() - r.period;
        r.edges.push_back(r.edges[i]);
        r.cvs.push_back(r.cvs[i + 1]);
    }
}

}  // namespace detail

// All level-`depth` net intervals containing x, as descents from the root.
// Eventually periodic descents are detected exactly.
inline PointLocation locate_point(const FiniteTypeStructure& st, const FieldElement& x, int depth) {
    st.require_saturated();
    const FieldElement zero = st.ifs.field->constant(0);
    const FieldElement one = st.ifs.field->constant(1);
    if (x < zero || x > one) throw NotInAttractor("point " + x.str() + " lies outside [0,1]");
    const FieldElement inv_rho = st.ifs.rho.inverse();
    struct Work {
        Representation rep;
        FieldElement y;
        std::map<std::pair<int, std::string>, int> seen;
    };
    std::vector<Work> todo;
    todo.push_back({Representation{{st.root()}, {}}, x, {}});
    PointLocation out;
    while (!todo.empty()) {
        Work w = std::move(todo.back());
        todo.pop_back();
        bool alive = true;
        while (alive && w.rep.depth() < depth) {
            int cv = w.rep.cvs.back();
            int lvl = w.rep.depth();
            if (w.rep.endpoint_level < 0) {
                if (w.y == zero) w.rep.endpoint_level = lvl, w.rep.endpoint_side = -1;
                else if (w.y == st.rv(cv).length) w.rep.endpoint_level = lvl, w.rep.endpoint_side = 1;
            }
            auto key = std::make_pair(cv, w.y.key());
            auto it = w.seen.find(key);
            if (it != w.seen.end()) {
                w.rep.period_start = it->second;
                w.rep.period = lvl - it->second;
                detail::extend_periodic(w.rep, depth);
                break;
            }
            w.seen[key] = lvl;
            const auto& ch = st.children(cv);
            std::vector<int> hits;
            for (size_t i = 0; i < ch.size(); ++i)
                if (ch[i].offset <= w.y && w.y <= ch[i].end) hits.push_back(static_cast<int>(i));
            if (hits.empty()) {
                alive = false;
                break;
            }
            for (size_t h = 1; h < hits.size(); ++h) {
                Work copy = w;
                const auto& c = ch[hits[h]];
                copy.rep.edges.push_back(hits[h]);
                copy.rep.cvs.push_back(c.child);
                copy.y = (copy.y - c.offset) * inv_rho;
                todo.push_back(std::move(copy));
            }
            const auto& c = ch[hits[0]];
            w.rep.edges.push_back(hits[0]);
            w.rep.cvs.push_back(c.child);
            w.y = (w.y - c.offset) * inv_rho;
        }
        if (alive) out.reps.push_back(std::move(w.rep));
    }
    if (out.reps.empty()) throw NotInAttractor("point " + x.str() + " is not in the attractor");
    std::sort(out.reps.begin(), out.reps.end(),
              [](const Representation& a, const Representation& b) { return a.edges < b.edges; });
    return out;
}

// Repeatedly take the leftmost (side < 0) or rightmost child starting at cv.
// Returns the descent; it is periodic unless some vector lacks such a child.
inline Representation extreme_chain(const FiniteTypeStructure& st, int cv, int side) {
    Representation r;
    r.cvs.push_back(cv);
    std::map<int, int> seen;
    while (true) {
        int cur = r.cvs.back();
        auto it = seen.find(cur);
        if (it != seen.end()) {
            r.period_start = it->second;
            r.period = r.depth() - it->second;
            return r;
        }
        seen[cur] = r.depth();
        const auto& ch = st.children(cur);
        int idx = -1;
        if (!ch.empty()) {
            if (side < 0 && ch.front().abuts_left) idx = 0;
            if (side > 0 && ch.back().abuts_right) idx = static_cast<int>(ch.size()) - 1;
        }
        if (idx < 0) return r;
        r.edges.push_back(idx);
        r.cvs.push_back(ch[idx].child);
    }
}

struct NetInterval {
    FieldElement a, b;
    std::vector<int> cvs;
    std::vector<int> edges;
};

// Every net interval of the given level, left to right, in absolute coordinates.
inline std::vector<NetInterval> net_intervals(const FiniteTypeStructure& st, int level) {
    st.require_saturated();
    std::vector<NetInterval> cur{{st.ifs.field->constant(0), st.ifs.field->constant(1), {st.root()}, {}}};
    FieldElement scale = st.ifs.field->constant(1);
    for (int n = 0; n < level; ++n) {
        std::vector<NetInterval> next;
        for (const auto& iv : cur) {
            const auto& ch = st.children(iv.cvs.back());
            for (size_t i = 0; i < ch.size(); ++i) {
                NetInterval c{iv.a + scale * ch[i].offset, iv.a + scale * ch[i].end, iv.cvs, iv.edges};
                c.cvs.push_back(ch[i].child);
                c.edges.push_back(static_cast<int>(i));
                next.push_back(std::move(c));
            }
        }
        cur = std::move(next);
        scale *= st.ifs.rho;
    }
    return cur;
}

// The point a descent converges to, when it eventually follows only
// leftmost or only rightmost children.
inline FieldElement descent_endpoint(const FiniteTypeStructure& st, const Representation& r) {
    if (r.endpoint_level < 0) throw PathError("descent does not end at an endpoint");
    FieldElement a = st.ifs.field->constant(0);
    FieldElement scale = st.ifs.field->constant(1);
    for (int i = 0; i < r.endpoint_level; ++i) {
        a = a + scale * st.children(r.cvs[i])[r.edges[i]].offset;
        scale = scale * st.ifs.rho;
    }
    if (r.endpoint_side < 0) return a;
    return a + scale * st.rv(r.cvs[r.endpoint_level]).length;
}

}  // namespace ftm
