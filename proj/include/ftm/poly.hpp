#pragma once

// Univariate polynomials over Q and Z, coefficient lists from the constant
// term up. Includes a Sturm root counter and an irreducibility test.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ftm {

using Rational = mpq_class;
using Integer = mpz_class;

// a/b in lowest terms
inline Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

namespace poly {

using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;

inline void trim(QPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline void trim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// degree of the zero polynomial is -1
inline int degree(const QPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (sgn(a[i]) != 0) return i;
    return -1;
}

inline QPoly to_q(const ZPoly& a) {
    QPoly r(a.begin(), a.end());
    trim(r);
    return r;
}

inline Rational eval(const QPoly& a, const Rational& x) {
    Rational r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
    return r;
}

inline QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly scale(const QPoly& a, const Rational& c) {
    QPoly r(a);
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}

// quotient and remainder; b must be nonzero
inline std::pair<QPoly, QPoly> divmod(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw Error("polynomial division by zero");
    int db = degree(b);
    int da = degree(a);
    if (da < db) return {{}, a};
    QPoly q(da - db + 1);
    for (int i = da; i >= db; --i) {
        if (sgn(a[i]) == 0) continue;
        Rational c = a[i] / b[db];
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline QPoly mod(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly derivative(const QPoly& a) {
    QPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(static_cast<long>(i)));
    trim(r);
    return r;
}

inline QPoly monic(const QPoly& a) {
    int d = degree(a);
    if (d < 0) return {};
    return scale(a, Rational(1) / a[d]);
}

inline QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Inverse of a modulo m, assuming gcd(a, m) = 1.
inline QPoly inverse_mod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = mod(a, m);
    QPoly t0, t1{Rational(1)};
    while (degree(r1) > 0) {
        auto [q, r] = divmod(r0, r1);
        QPoly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (degree(r1) != 0) throw Error("element is not invertible");
    return mod(scale(t1, Rational(1) / r1[0]), m);
}

// Number of sign changes of the Sturm sequence at x.
inline int sturm_changes(const std::vector<QPoly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline std::vector<QPoly> sturm_sequence(const QPoly& f) {
    std::vector<QPoly> seq{f, derivative(f)};
    while (degree(seq.back()) > 0) {
        QPoly r = mod(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        seq.push_back(scale(r, Rational(-1)));
    }
    return seq;
}

// distinct real roots of f in the closed interval [lo, hi]
inline int count_roots(const QPoly& f, const Rational& lo, const Rational& hi) {
    auto seq = sturm_sequence(f);
    int n = sturm_changes(seq, lo) - sturm_changes(seq, hi);
    if (sgn(eval(f, lo)) == 0) ++n;
    return n;
}

// make integer and primitive with positive leading coefficient
inline ZPoly primitive(const QPoly& a) {
    Integer l = 1;
    for (const auto& c : a) l = lcm(l, Integer(c.get_den()));
    ZPoly r;
    for (const auto& c : a) r.push_back(Integer(c * l));
    trim(r);
    Integer g = 0;
    for (const auto& c : r) g = gcd(g, c);
    if (g != 0)
        for (auto& c : r) c /= g;
    if (!r.empty() && sgn(r.back()) < 0)
        for (auto& c : r) c = -c;
    return r;
}

namespace detail {

// positive divisors of |n| by trial division; n != 0
inline std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<std::pair<Integer, int>> fac;
    for (Integer p = 2; p * p <= n; ++p) {
        if (p > 10000000) throw InputError("coefficient too large to factor");
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fac.push_back({p, e});
    }
    if (n > 1) fac.push_back({n, 1});
    std::vector<Integer> ds{1};
    for (auto& [p, e] : fac) {
        size_t k = ds.size();
        Integer pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= p;
            for (size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

using ModPoly = std::vector<uint64_t>;

inline void mtrim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline uint64_t powm(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline ModPoly mmod(ModPoly a, const ModPoly& b, uint64_t p) {
    mtrim(a);
    int db = static_cast<int>(b.size()) - 1;
    uint64_t inv = powm(b.back(), p - 2, p);
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        uint64_t c = a[i] * inv % p;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - c * b[j] % p) % p;
    }
    mtrim(a);
    return a;
}

inline ModPoly mmul(const ModPoly& a, const ModPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    mtrim(r);
    return r;
}

inline ModPoly mgcd(ModPoly a, ModPoly b, uint64_t p) {
    mtrim(a);
    mtrim(b);
    while (!b.empty()) {
        ModPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t inv = powm(a.back(), p - 2, p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

inline ModPoly mdiv(ModPoly a, const ModPoly& b, uint64_t p) {
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    ModPoly q(std::max(da - db + 1, 0), 0);
    uint64_t inv = powm(b.back(), p - 2, p);
    for (int i = da; i >= db; --i) {
        uint64_t c = a[i] * inv % p;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - c * b[j] % p) % p;
    }
    mtrim(q);
    return q;
}

inline ModPoly mpowx(uint64_t e, const ModPoly& f, uint64_t p, ModPoly base) {
    ModPoly r{1};
    while (e) {
        if (e & 1) r = mmod(mmul(r, base, p), f, p);
        base = mmod(mmul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// Degrees of the irreducible factors of f mod p, or empty if f mod p is
// not squarefree of full degree.
inline std::vector<int> factor_degrees(const ZPoly& f, uint64_t p) {
    ModPoly g;
    for (const auto& c : f) {
        Integer r = c % Integer(static_cast<unsigned long>(p));
        if (r < 0) r += Integer(static_cast<unsigned long>(p));
        g.push_back(r.get_ui());
    }
    mtrim(g);
    if (g.size() != f.size()) return {};
    ModPoly dg;
    for (size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * (i % p) % p);
    mtrim(dg);
    if (dg.empty() || mgcd(g, dg, p).size() != 1) return {};
    std::vector<int> out;
    ModPoly h{0, 1};
    for (int i = 1; 2 * i <= static_cast<int>(g.size()) - 1; ++i) {
        h = mpowx(p, g, p, h);
        ModPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        mtrim(hx);
        ModPoly d = mgcd(g, hx, p);
        int dd = static_cast<int>(d.size()) - 1;
        for (int k = 0; k < dd / i; ++k) out.push_back(i);
        if (dd > 0) {
            g = mdiv(g, d, p);
            h = mmod(h, g, p);
        }
    }
    if (g.size() > 1) out.push_back(static_cast<int>(g.size()) - 1);
    return out;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool divides(const ZPoly& g, const ZPoly& f) {
    auto [q, r] = divmod(to_q(f), to_q(g));
    if (!r.empty()) return false;
    for (const auto& c : q)
        if (c.get_den() != 1) return false;
    return true;
}

// Kronecker search for an integer factor of degree e.
inline bool has_factor_of_degree(const ZPoly& f, int e) {
    QPoly fq = to_q(f);
    std::vector<Integer> xs, vals;
    for (long x = 0; static_cast<int>(xs.size()) < e + 1; x = (x <= 0 ? 1 - x : -x)) {
        Rational v = eval(fq, Rational(x));
        if (sgn(v) == 0) return true;
        xs.push_back(x);
        vals.push_back(Integer(v));
    }
    std::vector<std::vector<Integer>> choices;
    for (size_t i = 0; i < vals.size(); ++i) {
        std::vector<Integer> c;
        for (const auto& d : divisors(vals[i])) {
            c.push_back(d);
            if (i > 0) c.push_back(-d);
        }
        choices.push_back(std::move(c));
    }
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
        // Lagrange interpolation through (xs[i], choice)
        QPoly g;
        for (size_t i = 0; i < xs.size(); ++i) {
            QPoly term{Rational(choices[i][idx[i]])};
            for (size_t j = 0; j < xs.size(); ++j) {
                if (j == i) continue;
                Rational den = Rational(xs[i] - xs[j]);
                term = mul(term, QPoly{Rational(-xs[j]) / den, Rational(1) / den});
            }
            g = add(g, term);
        }
        if (degree(g) == e) {
            bool integral = true;
            for (const auto& c : g)
                if (c.get_den() != 1) integral = false;
            if (integral) {
                ZPoly gz;
                for (const auto& c : g) gz.push_back(Integer(c));
                if (divides(gz, f)) return true;
            }
        }
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return false;
}

}  // namespace detail

// Irreducibility over Q of a polynomial with integer coefficients.
inline bool is_irreducible(ZPoly f) {
    trim(f);
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    if (sgn(f[0]) == 0) return false;
    // rational roots
    for (const auto& p : detail::divisors(f[0]))
        for (const auto& q : detail::divisors(f.back()))
            for (int s : {1, -1})
                {
                    Rational r(s * p, q);
                    r.canonicalize();
                    if (sgn(eval(to_q(f), r)) == 0) return false;
                }
    if (n <= 3) return true;
    // factor degree patterns modulo small primes
    std::set<int> possible;
    for (int d = 1; d < n; ++d) possible.insert(d);
    int used = 0;
    for (uint64_t p = 3; p < 400 && used < 20; p += 2) {
        if (!detail::is_prime(p)) continue;
        auto degs = detail::factor_degrees(f, p);
        if (degs.empty()) continue;
        ++used;
        std::set<int> sums{0};
        for (int d : degs) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + d);
            sums = std::move(next);
        }
        std::set<int> keep;
        for (int d : possible)
            if (sums.count(d)) keep.insert(d);
        possible = std::move(keep);
        if (possible.empty()) return true;
    }
    for (int e = 2; 2 * e <= n; ++e)
        if (possible.count(e) && detail::has_factor_of_degree(f, e)) return false;
    return true;
}

}  // namespace poly
}  // namespace ftm
