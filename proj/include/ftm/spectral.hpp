#pragma once

// Spectral radius of nonnegative rational matrices with certified
// Collatz-Wielandt bounds, and outward-rounded enclosures of logarithms.

#include <mpfr.h>

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "loop_classes.hpp"

namespace ftm {

struct SpectralResult {
    double value = 0;
    Rational lo, hi;                // certified: lo <= sp <= hi
    std::optional<Rational> exact;  // when sp is rational and identified
    std::string exact_form;         // e.g. "3", "(4+sqrt(8))/2"
};

namespace detail {

inline std::vector<Rational> charpoly(const Matrix& A) {
    // Faddeev-LeVerrier; returns coefficients from the constant term up
    int n = A.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix M(n, n);
    for (int k = 1; k <= n; ++k) {
        Matrix AM = A * M;
        for (int i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
        M = AM;
        Matrix AM2 = A * M;
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += AM2(i, i);
        c[n - k] = -tr / Rational(k);
    }
    return c;
}

// Rational root of p lying in [lo, hi], if p has exactly one root there.
inline void identify(const std::vector<Rational>& cp, SpectralResult& r) {
    poly::QPoly p(cp.begin(), cp.end());
    poly::trim(p);
    poly::QPoly sf = poly::divmod(p, poly::gcd(p, poly::derivative(p))).first;
    if (poly::count_roots(sf, r.lo, r.hi) != 1) return;
    poly::ZPoly z = poly::primitive(sf);
    // strip rational roots
    poly::QPoly rest = sf;
    std::vector<Rational> found;
    if (sgn(z[0]) != 0) {
        for (const auto& a : poly::detail::divisors(z[0]))
            for (const auto& b : poly::detail::divisors(z.back()))
                for (int s : {1, -1}) {
                    Rational x(s * a, b);
                    x.canonicalize();
                    if (sgn(poly::eval(sf, x)) != 0) continue;
                    if (std::find(found.begin(), found.end(), x) != found.end()) continue;
                    found.push_back(x);
                    if (x >= r.lo && x <= r.hi) {
                        r.exact = x;
                        r.exact_form = x.get_str();
                        return;
                    }
                    rest = poly::divmod(rest, poly::QPoly{-x, Rational(1)}).first;
                }
    } else {
        if (r.lo <= 0 && r.hi >= 0) {
            r.exact = Rational(0);
            r.exact_form = "0";
            return;
        }
        rest = poly::divmod(rest, poly::QPoly{Rational(0), Rational(1)}).first;
    }
    if (poly::degree(rest) == 2) {
        // largest root of a x^2 + b x + c: (-b + sqrt(b^2 - 4ac)) / (2a)
        poly::ZPoly q = poly::primitive(rest);
        Integer a = q[2], b = q[1], c = q[0];
        Integer disc = b * b - 4 * a * c;
        r.exact_form = "(" + Integer(-b).get_str() + "+sqrt(" + disc.get_str() + "))/" + Integer(2 * a).get_str();
    }
}

inline Rational to_rational(double x) {
    Rational r(x);
    r.canonicalize();
    return r;
}

// Certified bounds for an irreducible nonnegative block.
inline std::pair<Rational, Rational> block_bounds(const Matrix& B, double& value) {
    int n = B.rows();
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = B(i, j).get_d();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    if (n > 1) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(D);
        if (es.info() == Eigen::Success) {
            int best = 0;
            for (int i = 1; i < n; ++i)
                if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
            Eigen::VectorXd w = es.eigenvectors().col(best).real().cwiseAbs();
            if (w.maxCoeff() > 0) v = w / w.maxCoeff();
        }
    }
    // polish with the shifted power method, which converges for irreducible blocks
    Eigen::MatrixXd S = D + Eigen::MatrixXd::Identity(n, n);
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd w = S * v;
        double m = w.maxCoeff();
        if (!(m > 0)) break;
        v = w / m;
    }
    for (int i = 0; i < n; ++i)
        if (!(v[i] > 1e-300)) v[i] = 1e-300;
    std::vector<Rational> vq(n);
    for (int i = 0; i < n; ++i) vq[i] = to_rational(v[i]);
    Rational lo, hi;
    for (int i = 0; i < n; ++i) {
        Rational s = 0;
        for (int j = 0; j < n; ++j)
            if (sgn(B(i, j)) != 0) s += B(i, j) * vq[j];
        Rational q = s / vq[i];
        if (i == 0 || q < lo) lo = q;
        if (i == 0 || q > hi) hi = q;
    }
    value = Rational((lo + hi) / 2).get_d();
    return {lo, hi};
}

}  // namespace detail

inline SpectralResult spectral_radius(const Matrix& T) {
    if (T.rows() != T.cols() || T.rows() == 0) throw Error("spectral radius needs a square matrix");
    int n = T.rows();
    SpectralResult r;
    auto set_exact = [&](const Rational& x) {
        r.exact = x;
        r.lo = r.hi = x;
        r.value = x.get_d();
        r.exact_form = x.get_str();
    };
    if (n == 1) {
        set_exact(T(0, 0));
        return r;
    }
    // constant column (or row) sums give a positive left (right) eigenvector
    bool cols_equal = true, rows_equal = true;
    for (int j = 1; j < n; ++j) {
        cols_equal = cols_equal && T.column_sum(j) == T.column_sum(0);
        rows_equal = rows_equal && T.row_sum(j) == T.row_sum(0);
    }
    if (cols_equal) {
        set_exact(T.column_sum(0));
        return r;
    }
    if (rows_equal) {
        set_exact(T.row_sum(0));
        return r;
    }
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sgn(T(i, j)) != 0) adj[i].push_back(j);
    r.lo = r.hi = 0;
    r.value = 0;
    for (const auto& comp : strongly_connected(adj)) {
        int m = static_cast<int>(comp.size());
        Matrix B(m, m);
        bool any = false;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                B(a, b) = T(comp[a], comp[b]);
                any = any || sgn(B(a, b)) != 0;
            }
        if (!any) continue;
        double val = 0;
        auto [lo, hi] = m == 1 ? std::make_pair(B(0, 0), B(0, 0)) : detail::block_bounds(B, val);
        if (m == 1) val = lo.get_d();
        if (lo > r.lo) r.lo = lo;
        if (hi > r.hi) r.hi = hi;
        r.value = std::max(r.value, val);
    }
    if (r.lo == r.hi) {
        set_exact(r.lo);
        return r;
    }
    if (n <= 4) detail::identify(detail::charpoly(T), r);
    if (r.exact) set_exact(*r.exact);
    return r;
}

// Closed interval of doubles, endpoints rounded outward.
struct Enclosure {
    double lo = 0, hi = 0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    double mid() const { return (lo + hi) / 2; }
    double width() const { return hi - lo; }
};

namespace detail {

struct Mpfr {
    mpfr_t x;
    Mpfr() { mpfr_init2(x, 256); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

inline double log_rounded(const Rational& q, mpfr_rnd_t dir) {
    if (sgn(q) <= 0) throw Error("logarithm of a nonpositive number");
    Mpfr a;
    mpfr_set_q(a.x, q.get_mpq_t(), dir);
    mpfr_log(a.x, a.x, dir);
    return mpfr_get_d(a.x, dir);
}

inline double div_rounded(double a, double b, mpfr_rnd_t dir) {
    Mpfr x, y;
    mpfr_set_d(x.x, a, dir);
    mpfr_set_d(y.x, b, dir);
    mpfr_div(x.x, x.x, y.x, dir);
    return mpfr_get_d(x.x, dir);
}

inline double mul_rounded(double a, double b, mpfr_rnd_t dir) {
    Mpfr x, y;
    mpfr_set_d(x.x, a, dir);
    mpfr_set_d(y.x, b, dir);
    mpfr_mul(x.x, x.x, y.x, dir);
    return mpfr_get_d(x.x, dir);
}

}  // namespace detail

// log over [lo, hi], 0 < lo <= hi
inline Enclosure log_enclosure(const Rational& lo, const Rational& hi) {
    return {detail::log_rounded(lo, MPFR_RNDD), detail::log_rounded(hi, MPFR_RNDU)};
}

// a / b with 0 < b.lo
inline Enclosure divide(const Enclosure& a, const Enclosure& b) {
    using detail::div_rounded;
    if (!(b.lo > 0)) throw Error("divisor enclosure must be positive");
    if (a.lo >= 0) return {div_rounded(a.lo, b.hi, MPFR_RNDD), div_rounded(a.hi, b.lo, MPFR_RNDU)};
    if (a.hi <= 0) return {div_rounded(a.lo, b.lo, MPFR_RNDD), div_rounded(a.hi, b.hi, MPFR_RNDU)};
    return {div_rounded(a.lo, b.lo, MPFR_RNDD), div_rounded(a.hi, b.lo, MPFR_RNDU)};
}

inline Enclosure scale(const Enclosure& a, double k) {
    using detail::mul_rounded;
    return {mul_rounded(a.lo, k, MPFR_RNDD), mul_rounded(a.hi, k, MPFR_RNDU)};
}

inline double log_double(const Rational& q) {
    long e1, e2;
    double m1 = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
    double m2 = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
    return std::log(std::fabs(m1)) - std::log(m2) + static_cast<double>(e1 - e2) * std::log(2.0);
}

}  // namespace ftm
