#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "fixtures.hpp"

using namespace ftm;
using fx::Shape;

namespace {

std::vector<Shape> shapes(const FiniteTypeStructure& st) {
    std::vector<Shape> out;
    for (const auto& r : st.reduced) out.push_back(fx::shape(r));
    return out;
}

// Does the open interval (a, b) meet the attractor? Refines the cylinders
// that meet it for `depth` more levels.
bool meets_attractor(const IFSSystem& s, const FieldElement& a, const FieldElement& b, int depth) {
    std::vector<std::pair<FieldElement, FieldElement>> cur{{s.field->constant(0), s.field->constant(1)}};
    for (int k = 0; k < depth && !cur.empty(); ++k) {
        std::vector<std::pair<FieldElement, FieldElement>> next;
        for (const auto& [u, w] : cur) {
            FieldElement len = w - u;
            for (const auto& t : s.translations) {
                FieldElement lo = u + len * t, hi = lo + len * s.rho;
                if (lo < b && a < hi) next.push_back({lo, hi});
            }
        }
        std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) {
            return x.first < y.first || (x.first == y.first && x.second < y.second);
        });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; }),
                   next.end());
        cur = std::move(next);
    }
    return !cur.empty();
}

// Level-n net intervals from the endpoints of all level-n cylinders.
std::vector<std::pair<FieldElement, FieldElement>> brute_net_intervals(const IFSSystem& s, int n, int extra) {
    std::vector<FieldElement> pts{s.field->constant(0)};
    FieldElement r = s.field->constant(1);
    for (int k = 0; k < n; ++k) {
        std::vector<FieldElement> next;
        for (const auto& v : pts)
            for (const auto& t : s.translations) next.push_back(v + r * t);
        std::sort(next.begin(), next.end(), FieldLess{});
        next.erase(std::unique(next.begin(), next.end()), next.end());
        pts = std::move(next);
        r *= s.rho;
    }
    std::vector<FieldElement> h;
    for (const auto& v : pts) {
        h.push_back(v);
        h.push_back(v + r);
    }
    std::sort(h.begin(), h.end(), FieldLess{});
    h.erase(std::unique(h.begin(), h.end()), h.end());
    std::vector<std::pair<FieldElement, FieldElement>> out;
    for (size_t i = 0; i + 1 < h.size(); ++i)
        if (meets_attractor(s, h[i], h[i + 1], n + extra)) out.push_back({h[i], h[i + 1]});
    return out;
}

}  // namespace

TEST(NetStructure, SixMapsQuarter) {
    auto t0 = std::chrono::steady_clock::now();
    auto st = explore(fx::six_maps_quarter());
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
    ASSERT_TRUE(st.saturated);
    std::vector<Shape> want{{1, {0}}, {frac(1, 2), {0}}, {frac(1, 2), {0, frac(1, 2)}}, {frac(1, 2), {frac(1, 2)}}};
    EXPECT_EQ(shapes(st), want);
    EXPECT_EQ(fx::child_map(st, 0), (std::vector<int>{2, 3, 3, 3, 4, 2, 3, 4}));
    EXPECT_EQ(fx::child_map(st, 1), (std::vector<int>{2, 3, 3, 3}));
    EXPECT_EQ(fx::child_map(st, 2), (std::vector<int>{3, 3, 3, 3}));
    EXPECT_EQ(fx::child_map(st, 3), (std::vector<int>{4, 2, 3, 4}));
}

TEST(NetStructure, GapThird) {
    auto st = explore(fx::gap_third());
    ASSERT_TRUE(st.saturated);
    auto t = [](int a, int b) { return frac(a, b); };
    std::vector<Shape> want{{1, {0}},
                            {t(1, 3), {0}},
                            {t(1, 3), {0, t(1, 3)}},
                            {t(1, 3), {0, t(1, 3), t(2, 3)}},
                            {t(1, 3), {t(1, 3), t(2, 3)}},
                            {t(1, 3), {t(2, 3)}}};
    EXPECT_EQ(shapes(st), want);
    EXPECT_EQ(fx::child_map(st, 0), (std::vector<int>{1, 0, 2, 3, 4, 5, 6}));
    EXPECT_EQ(fx::child_map(st, 1), (std::vector<int>{1}));
    EXPECT_EQ(fx::child_map(st, 2), (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(fx::child_map(st, 3), (std::vector<int>{4, 4, 4}));
    EXPECT_EQ(fx::child_map(st, 4), (std::vector<int>{4, 4, 4}));
    EXPECT_EQ(fx::child_map(st, 5), (std::vector<int>{4, 5, 6}));
}

TEST(NetStructure, EightMapsQuarter) {
    auto st = explore(fx::eight_maps_quarter());
    ASSERT_TRUE(st.saturated);
    auto t = [](int a) { return frac(a, 3); };
    std::vector<Shape> want{{1, {0}},
                            {t(1), {0}},
                            {t(1), {0, t(1)}},
                            {t(1), {0, t(1), t(2)}},
                            {t(1), {t(1), t(2)}},
                            {t(1), {t(2)}},
                            {t(2), {0, t(1)}}};
    EXPECT_EQ(shapes(st), want);
    std::vector<std::vector<int>> maps{{2, 3, 4, 4, 4, 4, 5, 6, 2, 7, 6}, {2, 3, 4, 4}, {4, 4, 4, 4}, {4, 4, 4, 4},
                                       {4, 4, 5, 6},                      {2, 7, 6},    {4, 4, 4, 4, 4, 4, 5, 6}};
    for (int r = 0; r < 7; ++r) EXPECT_EQ(fx::child_map(st, r), maps[r]) << "reduced vector " << r + 1;
}

TEST(NetStructure, QuadraticRatio) {
    auto s = fx::quadratic_ratio();
    auto st = explore(s);
    ASSERT_TRUE(st.saturated);
    auto r = s.rho, one = s.field->constant(1), zero = s.field->constant(0);
    std::vector<std::pair<FieldElement, std::vector<FieldElement>>> want{
        {one, {zero}}, {one - r, {zero}}, {r, {zero, one - r}}, {one - r, {r}}, {one - r - r, {r}}};
    ASSERT_EQ(st.reduced.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(st.reduced[i].length, want[i].first) << i;
        EXPECT_EQ(st.reduced[i].neighbours, want[i].second) << i;
    }
}

TEST(NetStructure, SimplePisotFamiliesAreFiniteType) {
    for (int k = 2; k <= 4; ++k) {
        auto st = explore(bernoulli_simple_pisot(k, frac(1, 3)));
        EXPECT_TRUE(st.saturated) << k;
    }
}

TEST(NetStructure, LimitsReportNotProven) {
    ExploreOptions o;
    o.max_vectors = 50;
    auto st = explore(fx::two_87(), o);
    EXPECT_FALSE(st.saturated);
    EXPECT_THROW(st.require_saturated(), NotProvenFiniteType);
    o = {};
    o.max_level = 3;
    auto st2 = explore(fx::two_87(), o);
    EXPECT_FALSE(st2.saturated);
}

TEST(NetStructureProperty, NetIntervalsMatchEndpointOracle) {
    std::vector<IFSSystem> systems{fx::six_maps_quarter(), fx::gap_third(), fx::eight_maps_quarter(),
                                   fx::abs_continuous(), fx::quadratic_ratio(), bernoulli_simple_pisot(2, frac(1, 2)),
                                   bernoulli_simple_pisot(3, frac(1, 2)), cantor_like(3, 1)};
    for (const auto& s : systems) {
        auto st = explore(s);
        for (int n = 0; n <= 3; ++n) {
            auto mine = net_intervals(st, n);
            auto oracle = brute_net_intervals(s, n, 5);
            ASSERT_EQ(mine.size(), oracle.size()) << "level " << n;
            for (size_t i = 0; i < mine.size(); ++i) {
                EXPECT_EQ(mine[i].a, oracle[i].first);
                EXPECT_EQ(mine[i].b, oracle[i].second);
                // the vector's length is the interval length over rho^n
                EXPECT_EQ(st.rv(mine[i].cvs.back()).length * s.rho.pow(n), mine[i].b - mine[i].a);
            }
        }
    }
}

TEST(NetStructureProperty, ChildrenTileParent) {
    std::vector<IFSSystem> systems{fx::six_maps_quarter(), fx::gap_third(), fx::eight_maps_quarter(),
                                   fx::quadratic_ratio(), bernoulli_simple_pisot(3, frac(1, 3))};
    for (const auto& s : systems) {
        auto st = explore(s);
        for (int cv = 0; cv < static_cast<int>(st.size()); ++cv) {
            const auto& ch = st.children(cv);
            ASSERT_FALSE(ch.empty());
            auto zero = s.field->constant(0);
            EXPECT_EQ(ch.front().abuts_left, ch.front().offset == zero);
            EXPECT_EQ(ch.back().abuts_right, ch.back().end == st.rv(cv).length);
            for (size_t i = 0; i < ch.size(); ++i) {
                EXPECT_TRUE(ch[i].offset < ch[i].end);
                EXPECT_EQ(ch[i].end - ch[i].offset, s.rho * st.rv(ch[i].child).length);
                if (i > 0) {
                    EXPECT_FALSE(ch[i].offset < ch[i - 1].end);
                    EXPECT_EQ(ch[i].gap_before, ch[i - 1].end < ch[i].offset);
                }
            }
        }
    }
}

TEST(Locate, RejectsPointsOffTheAttractor) {
    auto st = explore(fx::gap_third());
    EXPECT_THROW(locate_point(st, st.ifs.field->constant(frac(7, 20)), 30), NotInAttractor);
    EXPECT_THROW(locate_point(st, st.ifs.field->constant(frac(3, 2)), 30), NotInAttractor);
    EXPECT_NO_THROW(locate_point(st, st.ifs.field->constant(frac(1, 3)), 30));
}

TEST(Locate, BoundaryPointHasTwoRepresentations) {
    auto st = explore(fx::six_maps_quarter());
    auto loc = locate_point(st, st.ifs.field->constant(frac(1, 2)), 40);
    ASSERT_EQ(loc.reps.size(), 2u);
    EXPECT_TRUE(loc.boundary());
    for (const auto& r : loc.reps) EXPECT_TRUE(r.periodic());
}

TEST(Locate, PeriodicInteriorPoint) {
    // 1/3 in base 4 is 0.111..., a fixed point of an interior composition
    auto st = explore(fx::abs_continuous());
    auto loc = locate_point(st, st.ifs.field->constant(frac(1, 3)), 40);
    for (const auto& r : loc.reps) EXPECT_TRUE(r.periodic());
}

TEST(LocateProperty, DescentEndpointsRoundTrip) {
    // random eventually periodic rightmost or leftmost descents end at a point that locates back
    std::mt19937 g(19);
    std::vector<IFSSystem> systems{fx::six_maps_quarter(), fx::eight_maps_quarter(), fx::gap_third()};
    for (const auto& s : systems) {
        auto st = explore(s);
        for (int trial = 0; trial < 20; ++trial) {
            auto prefix = fx::random_path(g, st, st.root(), 1 + trial % 4);
            Representation r;
            r.cvs.push_back(st.root());
            for (int e : prefix) {
                r.edges.push_back(e);
                r.cvs.push_back(st.children(r.cvs.back())[e].child);
            }
            int side = trial % 2 ? 1 : -1;
            auto chain = extreme_chain(st, r.cvs.back(), side);
            if (!chain.periodic()) continue;
            r.endpoint_level = r.depth();
            r.endpoint_side = side;
            auto x = descent_endpoint(st, r);
            auto loc = locate_point(st, x, 60);
            bool found = false;
            for (const auto& rep : loc.reps)
                found = found || std::equal(prefix.begin(), prefix.end(), rep.edges.begin());
            EXPECT_TRUE(found);
        }
    }
}
