#pragma once

// Equicontractive iterated function systems S_j(x) = rho*x + d_j with
// convex hull normalized to [0,1], and the probabilities of the
// associated self-similar measure.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "algebraic.hpp"

namespace ftm {

struct IFSSystem {
    FieldPtr field;
    FieldElement rho;
    std::vector<FieldElement> translations;  // increasing, first 0, last 1 - rho
    std::vector<Rational> probabilities;     // empty when only the structure is wanted
    std::string family = "custom";

    int num_maps() const { return static_cast<int>(translations.size()); }
    bool has_probabilities() const { return !probabilities.empty(); }
};

inline void validate_probabilities(const std::vector<Rational>& p, size_t maps) {
    if (p.empty()) return;
    if (p.size() != maps)
        throw InputError("expected " + std::to_string(maps) + " probabilities, got " + std::to_string(p.size()));
    Rational s = 0;
    for (const auto& x : p) {
        if (x <= 0) throw InputError("probabilities must be positive");
        s += x;
    }
    if (s != 1) throw InputError("probabilities sum to " + s.get_str() + ", not 1");
}

// Sorts the maps by translation and rescales so that the attractor's hull
// is [0,1]. Probabilities follow their maps through the sort.
inline IFSSystem build_ifs(const FieldPtr& field, std::vector<FieldElement> translations,
                           std::vector<Rational> probabilities = {}) {
    if (translations.size() < 2) throw InputError("need at least two maps");
    validate_probabilities(probabilities, translations.size());
    std::vector<size_t> order(translations.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return translations[a] < translations[b]; });
    for (size_t i = 1; i < order.size(); ++i)
        if (translations[order[i]] == translations[order[i - 1]])
            throw InputError("duplicate translation " + translations[order[i]].str());
    IFSSystem s;
    s.field = field;
    s.rho = field->rho();
    FieldElement one = field->constant(1);
    FieldElement d0 = translations[order.front()];
    // hull of the shifted system is [0, dmax/(1-rho)]
    FieldElement scale = (one - s.rho) / (translations[order.back()] - d0);
    for (size_t i : order) {
        s.translations.push_back((translations[i] - d0) * scale);
        if (!probabilities.empty()) s.probabilities.push_back(probabilities[i]);
    }
    return s;
}

inline IFSSystem cantor_like(int d, int m, std::vector<Rational> probabilities = {}) {
    if (d < 2) throw InputError("cantor family needs d >= 2");
    if (m < 1) throw InputError("cantor family needs m >= 1");
    auto field = FieldContext::rational(frac(1, d));
    std::vector<FieldElement> t;
    for (int j = 0; j <= m; ++j) t.push_back(field->constant(frac(j * (d - 1), m * d)));
    IFSSystem s = build_ifs(field, t, std::move(probabilities));
    s.family = "cantor";
    return s;
}

// Root in (0,1) of x^k + ... + x - 1; its inverse is the simple Pisot number.
inline FieldPtr simple_pisot_field(int k) {
    if (k < 2) throw InputError("simple Pisot family needs k >= 2");
    poly::ZPoly f(k + 1, Integer(1));
    f[0] = -1;
    poly::QPoly q = poly::to_q(f);
    Rational lo(1, 2), hi(1);
    while (hi >= 1 || sgn(poly::eval(q, hi)) == 0) {
        Rational mid = (lo + hi) / 2;
        if (sgn(poly::eval(q, mid)) < 0) lo = mid; else hi = mid;
    }
    return FieldContext::create(f, lo, hi);
}

inline IFSSystem bernoulli_simple_pisot(int k, const Rational& p) {
    if (!(p > 0 && p < 1)) throw InputError("bernoulli weight must lie in (0,1)");
    auto field = simple_pisot_field(k);
    FieldElement r = field->rho();
    IFSSystem s = build_ifs(field, {field->constant(0), field->constant(1) - r}, {p, 1 - p});
    s.family = "bernoulli_simple_pisot";
    return s;
}

// k-fold convolution of the Cantor-like measure with maps x/d + j(d-1)/(nd),
// j = 0..n, where n + 1 = base.size().
inline IFSSystem convolution_power(int d, const std::vector<Rational>& base, int k) {
    if (base.size() < 2) throw InputError("convolution base needs at least two weights");
    if (k < 1) throw InputError("convolution power must be >= 1");
    validate_probabilities(base, base.size());
    std::vector<Rational> c{Rational(1)};
    for (int i = 0; i < k; ++i) {
        std::vector<Rational> next(c.size() + base.size() - 1);
        for (size_t a = 0; a < c.size(); ++a)
            for (size_t b = 0; b < base.size(); ++b) next[a + b] += c[a] * base[b];
        c = std::move(next);
    }
    int m = static_cast<int>(c.size()) - 1;
    IFSSystem s = cantor_like(d, m, c);
    s.family = "convolution";
    return s;
}

// S_sigma(x) = S_{j1}(S_{j2}(...S_{jn}(x)))
inline FieldElement evaluate_map(const IFSSystem& s, const std::vector<int>& word, const FieldElement& x) {
    FieldElement y = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it < 0 || *it >= s.num_maps()) throw InputError("letter out of range");
        y = s.rho * y + s.translations[*it];
    }
    return y;
}

inline Rational word_probability(const IFSSystem& s, const std::vector<int>& word) {
    Rational p = 1;
    for (int j : word) p *= s.probabilities.at(j);
    return p;
}

}  // namespace ftm
