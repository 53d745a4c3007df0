#pragma once

// Exact arithmetic in Q(rho) for a real algebraic contraction rho in (0,1).
// Elements are coefficient lists in rho reduced modulo the minimal
// polynomial; signs are decided by interval evaluation on an isolating
// interval that is refined on demand.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace ftm {

class FieldElement;

class FieldContext : public std::enable_shared_from_this<FieldContext> {
  public:
    // minpoly: integer coefficients, constant term first.
    // [lo, hi] must contain exactly one root of minpoly, inside (0, 1).
    static std::shared_ptr<const FieldContext> create(poly::ZPoly minpoly, Rational lo, Rational hi) {
        poly::trim(minpoly);
        if (minpoly.size() < 2) throw InputError("minimal polynomial must have degree >= 1");
        if (sgn(minpoly[0]) == 0) throw InputError("minimal polynomial has zero constant term");
        if (!(lo <= hi)) throw InputError("isolating interval is empty");
        if (!(lo > 0 && hi < 1)) throw InputError("isolating interval must lie inside (0,1)");
        if (!poly::is_irreducible(minpoly)) throw InputError("minimal polynomial is reducible over Q");
        poly::QPoly q = poly::to_q(minpoly);
        int roots = poly::count_roots(q, lo, hi);
        if (roots != 1)
            throw InputError("isolating interval contains " + std::to_string(roots) + " roots");
        std::shared_ptr<FieldContext> ctx(new FieldContext());
        ctx->int_minpoly_ = poly::primitive(q);
        ctx->minpoly_ = poly::monic(q);
        ctx->degree_ = static_cast<int>(ctx->minpoly_.size()) - 1;
        ctx->lo_ = lo;
        ctx->hi_ = hi;
        if (ctx->degree_ == 1) {
            ctx->lo_ = ctx->hi_ = -ctx->minpoly_[0];
        } else {
            ctx->refine(ctx->lo_, ctx->hi_, Rational(1, 1) / Rational(Integer(1) << 96));
        }
        ctx->approx_ = Rational((ctx->lo_ + ctx->hi_) / 2).get_d();
        return ctx;
    }

    // Q with rho = r
    static std::shared_ptr<const FieldContext> rational(const Rational& r) {
        if (!(r > 0 && r < 1)) throw InputError("contraction must lie in (0,1)");
        return create({-Integer(r.get_num()), Integer(r.get_den())}, r, r);
    }

    int degree() const { return degree_; }
    const poly::QPoly& minpoly() const { return minpoly_; }
    const poly::ZPoly& integer_minpoly() const { return int_minpoly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    double approx() const { return approx_; }
    bool is_rational() const { return degree_ == 1; }

    FieldElement rho() const;
    FieldElement constant(const Rational& c) const;
    FieldElement element(poly::QPoly coeffs) const;

    // sign of a(rho); a must already be reduced
    int sign(const poly::QPoly& a) const {
        if (a.empty()) return 0;
        if (degree_ == 1) return sgn(a[0]);
        Rational l = lo_, h = hi_;
        for (int iter = 0;; ++iter) {
            auto [vl, vh] = range(a, l, h);
            if (vl > 0) return 1;
            if (vh < 0) return -1;
            if (iter > 20000) throw Error("sign determination did not terminate");
            bisect(l, h);
        }
    }

    // double approximation of a(rho) with absolute error below eps
    double approximate(const poly::QPoly& a, double eps) const {
        if (a.empty()) return 0.0;
        Rational l = lo_, h = hi_;
        Rational e(eps);
        for (int iter = 0; iter < 20000; ++iter) {
            auto [vl, vh] = range(a, l, h);
            if (vh - vl < e || l == h) return Rational((vl + vh) / 2).get_d();
            bisect(l, h);
        }
        throw Error("approximation did not terminate");
    }

    std::pair<Rational, Rational> enclose(const poly::QPoly& a) const { return range(a, lo_, hi_); }

    bool operator==(const FieldContext& o) const {
        return int_minpoly_ == o.int_minpoly_ && lo_ <= o.hi_ && o.lo_ <= hi_;
    }

  private:
    FieldContext() = default;

    void bisect(Rational& l, Rational& h) const {
        Rational mid = (l + h) / 2;
        int sm = sgn(poly::eval(minpoly_, mid));
        if (sm == 0) {
            l = h = mid;
            return;
        }
        if (sgn(poly::eval(minpoly_, l)) == sm) l = mid; else h = mid;
    }

    void refine(Rational& l, Rational& h, const Rational& width) const {
        while (h - l > width) bisect(l, h);
    }

    // enclosure of a(x) for x in [l, h] with 0 < l
    static std::pair<Rational, Rational> range(const poly::QPoly& a, const Rational& l, const Rational& h) {
        Rational rl = a.back(), rh = a.back();
        for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) {
            Rational c1 = rl * l, c2 = rl * h, c3 = rh * l, c4 = rh * h;
            rl = std::min({c1, c2, c3, c4}) + a[i];
            rh = std::max({c1, c2, c3, c4}) + a[i];
        }
        return {rl, rh};
    }

    poly::QPoly minpoly_;
    poly::ZPoly int_minpoly_;
    int degree_ = 0;
    Rational lo_, hi_;
    double approx_ = 0;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr ctx, poly::QPoly c) : ctx_(std::move(ctx)), c_(std::move(c)) {
        for (auto& x : c_) x.canonicalize();
        poly::trim(c_);
        if (static_cast<int>(c_.size()) > ctx_->degree()) c_ = poly::mod(c_, ctx_->minpoly());
    }

    const FieldPtr& context() const { return ctx_; }
    const poly::QPoly& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int sign() const { return ctx_->sign(c_); }
    double to_double(double eps = 1e-17) const { return ctx_->approximate(c_, eps); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_value() const {
        if (!is_rational()) throw Error("element is not rational");
        return c_.empty() ? Rational(0) : c_[0];
    }

    FieldElement operator-() const { return {ctx_, poly::scale(c_, Rational(-1))}; }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        return {a.ctx_, poly::add(a.c_, b.c_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return {a.ctx_, poly::sub(a.c_, b.c_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        return {a.ctx_, poly::mul(a.c_, b.c_)};
    }
    friend FieldElement operator*(const FieldElement& a, const Rational& r) {
        return {a.ctx_, poly::scale(a.c_, r)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    FieldElement inverse() const {
        if (is_zero()) throw Error("division by zero in Q(rho)");
        if (c_.size() == 1) return {ctx_, {Rational(1) / c_[0]}};
        return {ctx_, poly::inverse_mod(c_, ctx_->minpoly())};
    }

    FieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement r{ctx_, {Rational(1)}}, b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    friend bool operator<(const FieldElement& a, const FieldElement& b) {
        if (a.c_ == b.c_) return false;
        return poly::sub(a.c_, b.c_).empty() ? false : a.ctx_->sign(poly::sub(a.c_, b.c_)) < 0;
    }
    friend bool operator>(const FieldElement& a, const FieldElement& b) { return b < a; }
    friend bool operator<=(const FieldElement& a, const FieldElement& b) { return !(b < a); }
    friend bool operator>=(const FieldElement& a, const FieldElement& b) { return !(a < b); }

    // canonical text, usable as a map key
    std::string key() const {
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += c_[i].get_str();
        }
        return s;
    }

    // human readable, e.g. "1/9 + 2*r - r^2"
    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            Rational a = abs(c_[i]);
            std::string mag = (i > 0 && a == 1) ? "" : a.get_str();
            std::string var = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
            std::string term = mag + ((!mag.empty() && !var.empty()) ? "*" : "") + var;
            if (s.empty()) s = (sgn(c_[i]) < 0 ? "-" : "") + term;
            else s += (sgn(c_[i]) < 0 ? " - " : " + ") + term;
        }
        return s;
    }

  private:
    FieldPtr ctx_;
    poly::QPoly c_;
};

inline FieldElement FieldContext::rho() const {
    if (degree_ == 1) return {shared_from_this(), {lo_}};
    return {shared_from_this(), {Rational(0), Rational(1)}};
}

inline FieldElement FieldContext::constant(const Rational& c) const { return {shared_from_this(), {c}}; }

inline FieldElement FieldContext::element(poly::QPoly coeffs) const {
    // coefficients are a polynomial in rho; for a rational context collapse it
    if (degree_ == 1) return {shared_from_this(), {poly::eval(coeffs, lo_)}};
    return {shared_from_this(), std::move(coeffs)};
}

struct FieldLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const { return a < b; }
};

}  // namespace ftm
