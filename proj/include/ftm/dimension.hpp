#pragma once

// Dimension computations on a finite type structure: Hausdorff dimension
// of the attractor, local dimensions at periodic points, bounds for the
// local dimensions on the essential class and a few diagnostic checks.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spectral.hpp"

namespace ftm {

struct DimValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    Enclosure bounds;
    std::optional<Rational> exact;
    std::string form;  // symbolic description such as "log(7)/log(4)"
};

namespace detail {

inline Rational pow_q(const Rational& a, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= a;
    return r;
}

// log(a) / log(b) as an exact rational with small terms, if it is one
inline std::optional<Rational> log_ratio_exact(const Rational& a, const Rational& b) {
    if (a <= 0 || b <= 0 || b == 1) return std::nullopt;
    if (a == 1) return Rational(0);
    double x = log_double(a) / log_double(b);
    // continued fraction convergents
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double y = x;
    for (int it = 0; it < 12; ++it) {
        double fl = std::floor(y);
        long c = static_cast<long>(fl);
        long h2 = c * h1 + h0, k2 = c * k1 + k0;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        if (k1 > 64 || std::labs(h1) > 512) break;
        // a^k1 == b^h1 ?
        Rational lhs = k1 >= 0 ? pow_q(a, k1) : 1 / pow_q(a, -k1);
        Rational rhs = h1 >= 0 ? pow_q(b, h1) : 1 / pow_q(b, -h1);
        if (lhs == rhs) return frac(h1, k1);
        if (y - fl < 1e-12) break;
        y = 1 / (y - fl);
    }
    return std::nullopt;
}

inline std::string qstr(const Rational& q) { return q.get_str(); }

}  // namespace detail

// |log rho|
inline Enclosure abs_log_rho(const FieldContext& f) {
    Enclosure l = log_enclosure(f.lo(), f.hi());
    return {-l.hi, -l.lo};
}

// log(x) / (L log rho) for x in [lo, hi]; exact_x when x is known exactly
inline DimValue log_quotient(const FieldContext& f, const Rational& lo, const Rational& hi, long L,
                             const std::optional<Rational>& exact_x, const std::string& xform) {
    Enclosure lx = log_enclosure(lo, hi);
    Enclosure num{-lx.hi, -lx.lo};
    Enclosure den = scale(abs_log_rho(f), static_cast<double>(L));
    DimValue d;
    d.bounds = divide(num, den);
    Rational mid = exact_x ? *exact_x : Rational((lo + hi) / 2);
    d.value = -log_double(mid) / (static_cast<double>(L) * -std::log(f.approx()));
    if (d.value < d.bounds.lo) d.value = d.bounds.lo;
    if (d.value > d.bounds.hi) d.value = d.bounds.hi;
    std::string rho = f.is_rational() ? f.lo().get_str() : "rho";
    d.form = "log(" + xform + ")/(" + (L == 1 ? "" : std::to_string(L) + "*") + "log(" + rho + "))";
    if (exact_x && f.is_rational()) {
        auto r = detail::log_ratio_exact(*exact_x, f.lo());
        if (r) {
            d.exact = *r / Rational(L);
            d.exact->canonicalize();
            d.value = d.exact->get_d();
            d.bounds = {d.value, d.value};
            if (Rational(d.value) != *d.exact) {
                d.bounds.lo = std::nextafter(d.value, -INFINITY);
                d.bounds.hi = std::nextafter(d.value, INFINITY);
            }
        }
    }
    return d;
}

inline DimValue spectral_dimension(const FieldContext& f, const SpectralResult& sp, long L) {
    if (sgn(sp.lo) <= 0) throw Error("spectral radius is not bounded away from zero");
    std::string form = sp.exact ? sp.exact->get_str() : (sp.exact_form.empty() ? "sp" : sp.exact_form);
    return log_quotient(f, sp.lo, sp.hi, L, sp.exact, form);
}

// ---------------------------------------------------------------- Hausdorff

// I[j][k] = number of children of essential reduced vector j of type k
inline Matrix incidence_matrix(const FiniteTypeStructure& st, const Decomposition& d) {
    int n = static_cast<int>(d.essential_reduced.size());
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[d.essential_reduced[i]] = i;
    Matrix I(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& c : st.expansion[d.essential_reduced[i]]) I(i, pos.at(st.reduced_of(c.child))) += 1;
    return I;
}

struct HausdorffResult {
    DimValue dimension;
    SpectralResult spectral;
    Matrix incidence;
};

inline HausdorffResult hausdorff_dimension(const FiniteTypeStructure& st, const Decomposition& d) {
    HausdorffResult h;
    h.incidence = incidence_matrix(st, d);
    h.spectral = spectral_radius(h.incidence);
    // log(sp) / |log rho| = log(1/sp) / log(rho)
    const auto& sp = h.spectral;
    std::optional<Rational> ex;
    if (sp.exact) ex = 1 / *sp.exact;
    h.dimension = log_quotient(*st.ifs.field, 1 / sp.hi, 1 / sp.lo, 1, ex,
                               "1/" + (sp.exact ? sp.exact->get_str() : sp.exact_form.empty() ? "sp" : "(" + sp.exact_form + ")"));
    if (sp.exact && st.ifs.field->is_rational()) {
        auto r = detail::log_ratio_exact(*sp.exact, 1 / st.ifs.field->lo());
        if (r) h.dimension.exact = *r;
    }
    std::string rho = st.ifs.field->is_rational() ? st.ifs.field->lo().get_str() : "rho";
    h.dimension.form = "log(" + (sp.exact ? sp.exact->get_str() : sp.exact_form.empty() ? "sp" : sp.exact_form) +
                       ")/|log(" + rho + ")|";
    return h;
}

// ---------------------------------------------------------------- periodic points

// log sp(T(cycle)) / (L log rho) for a cycle of edges starting and ending at cv
inline DimValue cycle_dimension(const FiniteTypeStructure& st, int cv, const std::vector<int>& edges,
                                SpectralResult* out = nullptr) {
    if (edges.empty()) throw PathError("empty cycle");
    int end = cv;
    for (int e : edges) {
        const auto& ch = st.children(end);
        if (e < 0 || e >= static_cast<int>(ch.size())) throw PathError("cycle uses a missing edge");
        end = ch[e].child;
    }
    if (end != cv) throw PathError("edges do not form a cycle");
    SpectralResult sp = spectral_radius(path_matrix(st, cv, edges));
    if (out) *out = sp;
    return spectral_dimension(*st.ifs.field, sp, static_cast<long>(edges.size()));
}

inline DimValue representation_dimension(const FiniteTypeStructure& st, const Representation& r) {
    if (!r.periodic()) throw PathError("representation is not eventually periodic");
    std::vector<int> cyc(r.edges.begin() + r.period_start, r.edges.begin() + r.period_start + r.period);
    return cycle_dimension(st, r.cvs[r.period_start], cyc);
}

struct PointDimension {
    DimValue dimension;
    std::vector<DimValue> per_representation;
    int chosen = 0;
};

// Local dimension at an eventually periodic point. With two
// representations the one with larger mass decay rate wins, i.e. the
// smaller dimension.
inline PointDimension local_dim_periodic(const FiniteTypeStructure& st, const PointLocation& loc) {
    PointDimension p;
    for (const auto& r : loc.reps) p.per_representation.push_back(representation_dimension(st, r));
    for (size_t i = 1; i < p.per_representation.size(); ++i)
        if (p.per_representation[i].value < p.per_representation[p.chosen].value) p.chosen = static_cast<int>(i);
    p.dimension = p.per_representation.at(p.chosen);
    return p;
}

// ---------------------------------------------------------------- slopes

struct SlopePoint {
    int level;
    double log_mass;
    double slope;
};

// Endpoint information for an eventually periodic descent that ends in
// only leftmost or only rightmost steps.
inline void infer_endpoint(const FiniteTypeStructure& st, Representation& r) {
    if (r.endpoint_level >= 0 || !r.periodic()) return;
    for (int side : {-1, 1}) {
        auto extreme = [&](int i) {
            const auto& c = st.children(r.cvs[i])[r.edges[i]];
            return side < 0 ? c.abuts_left : c.abuts_right;
        };
        bool cyc = true;
        for (int i = r.period_start; i < r.period_start + r.period; ++i) cyc = cyc && extreme(i);
        if (!cyc) continue;
        int lvl = r.period_start;
        while (lvl > 0 && extreme(lvl - 1)) --lvl;
        r.endpoint_level = lvl;
        r.endpoint_side = side;
        return;
    }
}

// log M_n / (n log rho), where M_n is the mass of the level-n net interval
// of the descent together with its neighbours (only the neighbour across
// the point for endpoints).
inline std::vector<SlopePoint> local_dim_estimate(const FiniteTypeStructure& st, Representation ray, int depth) {
    require_probabilities(st.ifs);
    if (ray.periodic()) {
        detail::extend_periodic(ray, depth);
        infer_endpoint(st, ray);
    }
    if (ray.depth() < depth) throw PathError("descent is shorter than the requested depth");
    struct Side {
        bool present = false;
        int cv = -1;
        Matrix vec;
    };
    Matrix centre = Matrix::identity(1);
    int cv = ray.cvs.front();
    if (cv != st.root()) throw PathError("descent must start at the root");
    Side left, right;
    double lr = std::log(st.ifs.field->approx());
    std::vector<SlopePoint> out;
    for (int n = 1; n <= depth; ++n) {
        int i = ray.edges[n - 1];
        const auto& ch = st.children(cv);
        Side nl, nr;
        if (i > 0 && !ch[i].gap_before) {
            nl = {true, ch[i - 1].child, centre * primitive_matrix(st, cv, i - 1)};
        } else if (i == 0 && ch[0].abuts_left && left.present) {
            const auto& lc = st.children(left.cv);
            if (!lc.empty() && lc.back().abuts_right) {
                int e = static_cast<int>(lc.size()) - 1;
                nl = {true, lc.back().child, left.vec * primitive_matrix(st, left.cv, e)};
            }
        }
        int last = static_cast<int>(ch.size()) - 1;
        if (i < last && !ch[i + 1].gap_before) {
            nr = {true, ch[i + 1].child, centre * primitive_matrix(st, cv, i + 1)};
        } else if (i == last && ch[i].abuts_right && right.present) {
            const auto& rc = st.children(right.cv);
            if (!rc.empty() && rc.front().abuts_left) nr = {true, rc.front().child, right.vec * primitive_matrix(st, right.cv, 0)};
        }
        centre = centre * primitive_matrix(st, cv, i);
        cv = ch[i].child;
        left = std::move(nl);
        right = std::move(nr);
        Rational M = norm(centre);
        bool at_end = ray.endpoint_level >= 0 && n >= ray.endpoint_level;
        if (left.present && !(at_end && ray.endpoint_side > 0)) M += norm(left.vec);
        if (right.present && !(at_end && ray.endpoint_side < 0)) M += norm(right.vec);
        double lm = log_double(M);
        out.push_back({n, lm, lm / (n * lr)});
    }
    return out;
}

// ---------------------------------------------------------------- bounds

struct OuterBounds {
    DimValue lo, hi;
    Rational pmax, pmin;  // largest and smallest column sums of essential primitive matrices
    int block_lo = 1, block_hi = 1;  // path lengths giving the reported endpoints
    int blocks_tried = 1;
};

namespace detail {

// min over essential paths of length K of the smallest column sum of the
// product, and max of the largest column sum
inline std::pair<Rational, Rational> block_extremes(const FiniteTypeStructure& st, const Decomposition& d, int K) {
    bool first = true;
    Rational mn, mx;
    std::vector<std::pair<int, Matrix>> stack;
    for (int v : d.essential_class()) {
        int sz = static_cast<int>(st.rv(v).neighbours.size());
        // depth-first over paths, keeping products
        std::vector<std::tuple<int, Matrix, int>> dfs{{v, Matrix::identity(sz), 0}};
        while (!dfs.empty()) {
            auto [cv, m, k] = std::move(dfs.back());
            dfs.pop_back();
            if (k == K) {
                Rational a = norm_min(m), b = norm_max(m);
                if (first || a < mn) mn = a;
                if (first || b > mx) mx = b;
                first = false;
                continue;
            }
            const auto& ch = st.children(cv);
            for (size_t e = 0; e < ch.size(); ++e) dfs.push_back({ch[e].child, m * primitive_matrix(st, cv, e), k + 1});
        }
    }
    return {mn, mx};
}

inline double count_paths(const FiniteTypeStructure& st, const Decomposition& d, int K) {
    std::map<int, double> ways;
    for (int v : d.essential_class()) ways[v] = 1;
    double total = 0;
    for (int k = 0; k < K; ++k) {
        std::map<int, double> next;
        for (auto [v, w] : ways)
            for (const auto& c : st.children(v)) next[c.child] += w;
        ways = std::move(next);
    }
    for (auto [v, w] : ways) total += w;
    return total;
}

}  // namespace detail

// Interval containing the local dimensions at essential points, from
// column sums of products of K essential primitive matrices, K = 1..max_block.
inline OuterBounds essential_interval_bounds(const FiniteTypeStructure& st, const Decomposition& d, int max_block = 6,
                                             double path_budget = 200000) {
    require_probabilities(st.ifs);
    const FieldContext& f = *st.ifs.field;
    OuterBounds ob;
    auto [pmin, pmax] = detail::block_extremes(st, d, 1);
    ob.pmin = pmin;
    ob.pmax = pmax;
    ob.lo = log_quotient(f, pmax, pmax, 1, pmax, pmax.get_str());
    ob.hi = log_quotient(f, pmin, pmin, 1, pmin, pmin.get_str());
    if (pmin == pmax) return ob;
    for (int K = 2; K <= max_block; ++K) {
        if (detail::count_paths(st, d, K) > path_budget) break;
        ob.blocks_tried = K;
        auto [mn, mx] = detail::block_extremes(st, d, K);
        DimValue lo = log_quotient(f, mx, mx, K, mx, mx.get_str());
        DimValue hi = log_quotient(f, mn, mn, K, mn, mn.get_str());
        if (lo.bounds.lo > ob.lo.bounds.lo) ob.lo = lo, ob.block_lo = K;
        if (hi.bounds.hi < ob.hi.bounds.hi) ob.hi = hi, ob.block_hi = K;
    }
    return ob;
}

struct CycleWitness {
    int start = -1;
    std::vector<int> edges;
    DimValue dimension;
    bool positive = false;
};

struct InnerBounds {
    bool found = false;
    DimValue lo, hi;
    CycleWitness lo_witness, hi_witness;
    size_t cycles = 0;          // distinct primitive cycles up to the budget
    size_t truly_essential = 0; // of those, not made only of leftmost or only of rightmost steps
    size_t positive = 0;        // truly essential cycles with a positive product
    bool used_positive = false; // endpoints taken over positive cycles only
    bool truncated = false;
};

// Local dimensions at periodic points of essential cycles of length up to
// cycle_budget; these are attained values.
inline InnerBounds essential_inner_bounds(const FiniteTypeStructure& st, const Decomposition& d, int cycle_budget = 8,
                                          size_t max_nodes = 4000000) {
    require_probabilities(st.ifs);
    InnerBounds ib;
    double lr = std::log(st.ifs.field->approx());
    struct Best {
        bool set = false;
        double rate = 0;
        int start = -1;
        std::vector<int> edges;
        bool positive = false;
    };
    Best lo_all, hi_all, lo_pos, hi_pos;
    auto consider = [](Best& b, double val, bool want_min, int s, const std::vector<int>& e, bool pos) {
        if (!b.set || (want_min ? val < b.rate : val > b.rate)) b = {true, val, s, e, pos};
    };
    size_t nodes = 0;
    auto to_dense = [&](int cv, int e) {
        Matrix m = primitive_matrix(st, cv, e);
        Eigen::MatrixXd D(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) D(i, j) = m(i, j).get_d();
        return D;
    };
    std::map<std::pair<int, int>, Eigen::MatrixXd> dense;
    auto prim = [&](int cv, int e) -> const Eigen::MatrixXd& {
        auto key = std::make_pair(cv, e);
        auto it = dense.find(key);
        if (it == dense.end()) it = dense.emplace(key, to_dense(cv, e)).first;
        return it->second;
    };
    for (int s : d.essential_class()) {
        struct Frame {
            int cv;
            size_t next;
            Eigen::MatrixXd prod;
            bool all_left, all_right;
        };
        std::vector<Frame> stack;
        std::vector<int> path_cv, path_e;
        int n0 = static_cast<int>(st.rv(s).neighbours.size());
        stack.push_back({s, 0, Eigen::MatrixXd::Identity(n0, n0), true, true});
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& ch = st.children(fr.cv);
            if (fr.next >= ch.size() || static_cast<int>(path_e.size()) >= cycle_budget) {
                stack.pop_back();
                if (!path_e.empty()) {
                    path_e.pop_back();
                    path_cv.pop_back();
                }
                continue;
            }
            int e = static_cast<int>(fr.next++);
            int to = ch[e].child;
            if (to < s) continue;
            if (++nodes > max_nodes) {
                ib.truncated = true;
                break;
            }
            Eigen::MatrixXd prod = fr.prod * prim(fr.cv, e);
            bool al = fr.all_left && ch[e].abuts_left, ar = fr.all_right && ch[e].abuts_right;
            path_cv.push_back(fr.cv);
            path_e.push_back(e);
            if (to == s) {
                // keep only the least rotation of primitive cycles
                size_t L = path_e.size();
                bool canonical = true;
                for (size_t r = 1; r < L && canonical; ++r) {
                    for (size_t k = 0; k < L; ++k) {
                        auto a = std::make_pair(path_cv[k], path_e[k]);
                        auto b = std::make_pair(path_cv[(k + r) % L], path_e[(k + r) % L]);
                        if (b < a) {
                            canonical = false;
                            break;
                        }
                        if (a < b) break;
                        if (k + 1 == L) canonical = false;  // equal rotation: not primitive
                    }
                }
                if (canonical) {
                    ++ib.cycles;
                    if (!al && !ar) {
                        ++ib.truly_essential;
                        double sp = prod.eigenvalues().cwiseAbs().maxCoeff();
                        double dim = std::log(sp) / (static_cast<double>(L) * lr);
                        bool pos = (prod.array() > 0).all();
                        if (pos) ++ib.positive;
                        consider(lo_all, dim, true, s, path_e, pos);
                        consider(hi_all, dim, false, s, path_e, pos);
                        if (pos) {
                            consider(lo_pos, dim, true, s, path_e, pos);
                            consider(hi_pos, dim, false, s, path_e, pos);
                        }
                    }
                }
                path_e.pop_back();
                path_cv.pop_back();
                continue;
            }
            stack.push_back({to, 0, prod, al, ar});
        }
        if (ib.truncated) break;
    }
    Best lo = lo_all, hi = hi_all;
    if (lo_pos.set) {
        lo = lo_pos;
        hi = hi_pos;
        ib.used_positive = true;
    }
    if (!lo.set) return ib;
    ib.found = true;
    ib.lo_witness = {lo.start, lo.edges, cycle_dimension(st, lo.start, lo.edges), lo.positive};
    ib.hi_witness = {hi.start, hi.edges, cycle_dimension(st, hi.start, hi.edges), hi.positive};
    ib.lo = ib.lo_witness.dimension;
    ib.hi = ib.hi_witness.dimension;
    return ib;
}

// ---------------------------------------------------------------- checks

struct EndpointDimension {
    Representation rep;
    DimValue dimension;
    bool isolated = false;  // certified to lie outside the essential interval
};

struct IsolationScan {
    EndpointDimension at0, at1;
    bool p0_below_pmin = false;  // weight of the first map below every essential column sum
    bool pm_below_pmin = false;
};

inline IsolationScan isolated_point_scan(const FiniteTypeStructure& st, const OuterBounds& ob) {
    IsolationScan sc;
    auto one = [&](int side) {
        EndpointDimension e;
        e.rep = extreme_chain(st, st.root(), side);
        e.dimension = representation_dimension(st, e.rep);
        e.isolated = e.dimension.bounds.lo > ob.hi.bounds.hi || e.dimension.bounds.hi < ob.lo.bounds.lo;
        return e;
    };
    sc.at0 = one(-1);
    sc.at1 = one(1);
    sc.p0_below_pmin = st.ifs.probabilities.front() < ob.pmin;
    sc.pm_below_pmin = st.ifs.probabilities.back() < ob.pmin;
    return sc;
}

struct ColumnSumCheck {
    bool equal = false;
    Rational value;
    DimValue dimension;       // log(value) / log(rho)
    bool matches_hausdorff = false;
};

// All columns of all essential primitive matrices have one common sum v;
// then v should equal rho^s.
inline ColumnSumCheck equal_column_sum_check(const FiniteTypeStructure& st, const Decomposition& d,
                                             const HausdorffResult& h) {
    require_probabilities(st.ifs);
    ColumnSumCheck c;
    bool first = true;
    c.equal = true;
    for (int v : d.essential_class())
        for (size_t e = 0; e < st.children(v).size(); ++e) {
            Matrix m = primitive_matrix(st, v, static_cast<int>(e));
            for (int j = 0; j < m.cols(); ++j) {
                Rational s = m.column_sum(j);
                if (first) c.value = s, first = false;
                else if (s != c.value) c.equal = false;
            }
        }
    if (!c.equal) return c;
    c.dimension = log_quotient(*st.ifs.field, c.value, c.value, 1, c.value, c.value.get_str());
    if (c.dimension.exact && h.dimension.exact) c.matches_hausdorff = *c.dimension.exact == *h.dimension.exact;
    else c.matches_hausdorff = c.dimension.bounds.lo <= h.dimension.bounds.hi && h.dimension.bounds.lo <= c.dimension.bounds.hi;
    return c;
}

struct PisotCheck {
    bool algebraic_integer = false;
    bool pisot = false;
    bool borderline = false;
    double largest_conjugate = 0;  // modulus
};

// Is 1/rho a Pisot number?
inline PisotCheck pisot_check(const FieldContext& f, double tol = 1e-9) {
    PisotCheck p;
    poly::ZPoly m = f.integer_minpoly();
    poly::ZPoly rev(m.rbegin(), m.rend());
    poly::trim(rev);
    Integer lead = rev.back();
    p.algebraic_integer = abs(lead) == 1;
    if (!p.algebraic_integer) return p;
    int n = static_cast<int>(rev.size()) - 1;
    if (n == 1) {
        p.pisot = true;
        return p;
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -Rational(Rational(rev[i]) / Rational(lead)).get_d();
    Eigen::VectorXcd ev = C.eigenvalues();
    double q = 1 / f.approx();
    int self = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(ev[i] - q) < std::abs(ev[self] - q)) self = i;
    for (int i = 0; i < n; ++i)
        if (i != self) p.largest_conjugate = std::max(p.largest_conjugate, std::abs(ev[i]));
    p.borderline = std::fabs(p.largest_conjugate - 1) <= tol;
    p.pisot = q > 1 && p.largest_conjugate < 1 - tol;
    return p;
}

// Every infinite descent avoiding the essential class is the descent to 0
// or the descent to 1.
inline bool nonessential_only_at_ends(const FiniteTypeStructure& st, const Decomposition& d) {
    // vectors with an infinite descent outside the essential class
    std::vector<bool> inf(st.size(), false);
    for (int c : d.loop_classes)
        if (c != d.essential)
            for (int v : d.components[c]) inf[v] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t v = 0; v < st.size(); ++v) {
            if (inf[v] || d.is_essential(static_cast<int>(v))) continue;
            for (const auto& c : st.children(static_cast<int>(v)))
                if (inf[c.child]) {
                    inf[v] = true;
                    changed = true;
                    break;
                }
        }
    }
    std::set<int> L, R;
    for (int side : {-1, 1}) {
        Representation r = extreme_chain(st, st.root(), side);
        for (int v : r.cvs) (side < 0 ? L : R).insert(v);
    }
    for (size_t v = 0; v < st.size(); ++v) {
        if (!inf[v]) continue;
        bool inl = L.count(static_cast<int>(v)), inr = R.count(static_cast<int>(v));
        if (!inl && !inr) return false;
        const auto& ch = st.children(static_cast<int>(v));
        for (size_t i = 0; i < ch.size(); ++i) {
            if (!inf[ch[i].child]) continue;
            bool ok = (inl && i == 0 && ch[i].abuts_left && !ch[i].abuts_right) ||
                      (inr && i + 1 == ch.size() && ch[i].abuts_right && !ch[i].abuts_left);
            if (!ok) return false;
        }
    }
    return true;
}

}  // namespace ftm
