#pragma once

#include <random>
#include <vector>

#include <ostream>

#include <ftm/ftm.hpp>

namespace ftm {
inline void PrintTo(const FieldElement& e, std::ostream* os) { *os << e.str(); }
inline void PrintTo(const Matrix& m, std::ostream* os) { *os << m.str(); }
}  // namespace ftm

namespace fx {

using namespace ftm;

inline std::vector<FieldElement> rationals(const FieldPtr& f, std::vector<int> num, int den) {
    std::vector<FieldElement> t;
    for (int n : num) t.push_back(f->constant(frac(n, den)));
    return t;
}

inline std::vector<Rational> uniform(int n) { return std::vector<Rational>(n, frac(1, n)); }

// x/4 + d/8, d in {0,1,2,3,5,6}
inline IFSSystem six_maps_quarter() {
    auto q = FieldContext::rational(frac(1, 4));
    return build_ifs(q, rationals(q, {0, 1, 2, 3, 5, 6}, 8), uniform(6));
}

// x/3 + {0, 4/9, 5/9, 2/3}
inline IFSSystem gap_third() {
    auto q = FieldContext::rational(frac(1, 3));
    return build_ifs(q, {q->constant(0), q->constant(frac(4, 9)), q->constant(frac(5, 9)), q->constant(frac(2, 3))},
                     uniform(4));
}

// x/4 + n/12, n in {0,1,2,3,4,5,8,9}
inline IFSSystem eight_maps_quarter() {
    auto q = FieldContext::rational(frac(1, 4));
    std::vector<Rational> p(8, frac(1, 14));
    p[0] = frac(1, 2);
    return build_ifs(q, rationals(q, {0, 1, 2, 3, 4, 5, 8, 9}, 12), p);
}

// x/4 + n/12, n in {0,1,2,7,8,9}
inline IFSSystem abs_continuous() {
    auto q = FieldContext::rational(frac(1, 4));
    return build_ifs(q, rationals(q, {0, 1, 2, 7, 8, 9}, 12),
                     {frac(1, 8), frac(1, 8), frac(1, 4), frac(1, 4), frac(1, 8), frac(1, 8)});
}

// rho root of 9x^2 - 18x + 4, translations 0, r - r^2, e + 2r - r^2, e + 3r - 2r^2 with e = 1/9
inline IFSSystem quadratic_ratio() {
    auto f = FieldContext::create({4, -18, 9}, frac(1, 10), frac(1, 2));
    auto r = f->rho();
    auto e = f->constant(frac(1, 9));
    return build_ifs(f, {f->constant(0), r - r * r, e + f->constant(2) * r - r * r, e + f->constant(3) * r - f->constant(2) * r * r},
                     uniform(4));
}

inline IFSSystem two_87() {
    auto q = FieldContext::rational(frac(1, 3));
    return build_ifs(q, {q->constant(0), q->constant(frac(2, 87)), q->constant(frac(2, 3))});
}

// p_w = (w + 1) / 55 for the ten maps of the d = 4, m = 9 Cantor-like system
inline std::vector<Rational> distinct_weights_10() {
    std::vector<Rational> p;
    for (int w = 0; w < 10; ++w) p.push_back(frac(w + 1, 55));
    return p;
}

// Random probability vector with small denominators, all entries positive.
inline std::vector<Rational> random_probabilities(std::mt19937& g, int n) {
    std::uniform_int_distribution<int> w(1, 9);
    std::vector<int> raw(n);
    int total = 0;
    for (auto& x : raw) total += (x = w(g));
    std::vector<Rational> p;
    for (int x : raw) p.push_back(frac(x, total));
    return p;
}

// Random descent of the given length starting at cv.
inline std::vector<int> random_path(std::mt19937& g, const FiniteTypeStructure& st, int cv, int len) {
    std::vector<int> edges;
    for (int i = 0; i < len; ++i) {
        const auto& ch = st.children(cv);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(ch.size()) - 1);
        int e = pick(g);
        edges.push_back(e);
        cv = ch[e].child;
    }
    return edges;
}

// Random cycle inside the essential class: a random walk until it revisits a vector.
inline std::pair<int, std::vector<int>> random_essential_cycle(std::mt19937& g, const FiniteTypeStructure& st,
                                                              const Decomposition& d) {
    const auto& cls = d.essential_class();
    std::uniform_int_distribution<size_t> start(0, cls.size() - 1);
    int cv = cls[start(g)];
    std::vector<int> visited{cv};
    std::vector<int> edges;
    while (true) {
        const auto& ch = st.children(cv);
        std::vector<int> inside;
        for (size_t i = 0; i < ch.size(); ++i)
            if (d.is_essential(ch[i].child)) inside.push_back(static_cast<int>(i));
        std::uniform_int_distribution<size_t> pick(0, inside.size() - 1);
        int e = inside[pick(g)];
        edges.push_back(e);
        cv = ch[e].child;
        auto it = std::find(visited.begin(), visited.end(), cv);
        if (it != visited.end()) {
            size_t k = static_cast<size_t>(it - visited.begin());
            return {cv, std::vector<int>(edges.begin() + k, edges.end())};
        }
        visited.push_back(cv);
    }
}

// Reduced vector as (length, neighbours) over rationals, for fixture comparison.
struct Shape {
    Rational length;
    std::vector<Rational> neighbours;
    bool operator==(const Shape&) const = default;
};

inline Shape shape(const ReducedVector& r) {
    Shape s{r.length.rational_value(), {}};
    for (const auto& n : r.neighbours) s.neighbours.push_back(n.rational_value());
    return s;
}

// Child list of a reduced vector as 1-based reduced ids with 0 marking a gap.
inline std::vector<int> child_map(const FiniteTypeStructure& st, int red) {
    std::vector<int> out;
    for (const auto& c : st.expansion[red]) {
        if (c.gap_before) out.push_back(0);
        out.push_back(st.reduced_of(c.child) + 1);
    }
    return out;
}

inline Matrix M(std::vector<std::vector<Rational>> rows) { return Matrix::from_rows(rows); }

// The same matrix with both neighbour lists read in decreasing order.
inline Matrix reversed_order(const Matrix& t) {
    Matrix r(t.rows(), t.cols());
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j) r(i, j) = t(t.rows() - 1 - i, t.cols() - 1 - j);
    return r;
}

}  // namespace fx
