#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"

using namespace ftm;

TEST(Ifs, SortsAndRescales) {
    auto q = FieldContext::rational(frac(1, 3));
    auto t = build_ifs(q, {q->constant(frac(4, 3)), q->constant(frac(2, 3))}, {frac(1, 4), frac(3, 4)});
    ASSERT_EQ(t.num_maps(), 2);
    EXPECT_EQ(t.translations[0], q->constant(0));
    EXPECT_EQ(t.translations[1], q->constant(frac(2, 3)));
    EXPECT_EQ(t.probabilities[0], frac(3, 4));
    EXPECT_EQ(t.probabilities[1], frac(1, 4));
}

TEST(Ifs, RejectsBadInput) {
    auto q = FieldContext::rational(frac(1, 3));
    EXPECT_THROW(build_ifs(q, {q->constant(0)}), InputError);
    EXPECT_THROW(build_ifs(q, {q->constant(0), q->constant(0)}), InputError);
    EXPECT_THROW(build_ifs(q, {q->constant(0), q->constant(1)}, {frac(1, 2)}), InputError);
    EXPECT_THROW(build_ifs(q, {q->constant(0), q->constant(1)}, {frac(1, 2), frac(1, 3)}), InputError);
    EXPECT_THROW(build_ifs(q, {q->constant(0), q->constant(1)}, {Rational(0), Rational(1)}), InputError);
    EXPECT_THROW(cantor_like(1, 3), InputError);
    EXPECT_THROW(bernoulli_simple_pisot(2, Rational(1)), InputError);
    EXPECT_THROW(convolution_power(3, {frac(1, 2), frac(1, 2)}, 0), InputError);
}

TEST(Ifs, CantorTranslations) {
    auto s = cantor_like(4, 9);
    ASSERT_EQ(s.num_maps(), 10);
    for (int j = 0; j <= 9; ++j) EXPECT_EQ(s.translations[j], s.field->constant(frac(3 * j, 36)));
}

TEST(Ifs, ConvolutionWeightsAreBinomial) {
    auto s = convolution_power(3, {frac(1, 2), frac(1, 2)}, 3);
    ASSERT_EQ(s.num_maps(), 4);
    std::vector<Rational> want{frac(1, 8), frac(3, 8), frac(3, 8), frac(1, 8)};
    EXPECT_EQ(s.probabilities, want);
}

TEST(IfsProperty, HullIsUnitInterval) {
    // every composition maps [0,1] into [0,1], and 0 and 1 are fixed points of the extreme maps
    std::mt19937 g(5);
    std::vector<IFSSystem> systems{fx::six_maps_quarter(), fx::gap_third(), fx::quadratic_ratio(),
                                   bernoulli_simple_pisot(3, frac(1, 3))};
    for (const auto& s : systems) {
        auto zero = s.field->constant(0), one = s.field->constant(1);
        EXPECT_EQ(evaluate_map(s, {0}, zero), zero);
        EXPECT_EQ(evaluate_map(s, {s.num_maps() - 1}, one), one);
        std::uniform_int_distribution<int> letter(0, s.num_maps() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> w(1 + trial % 6);
            for (auto& x : w) x = letter(g);
            auto a = evaluate_map(s, w, zero), b = evaluate_map(s, w, one);
            EXPECT_FALSE(a < zero);
            EXPECT_FALSE(one < b);
            EXPECT_EQ(b - a, s.rho.pow(static_cast<long>(w.size())));
        }
    }
}

TEST(Config, CustomQuadratic) {
    auto c = Config::parse_string(
        "# comment\n"
        "minpoly = [4, -18, 9]\n"
        "isolating = [1/10, 1/2]\n"
        "translations = [0, [0, 1, -1], [1/9, 2, -1], [1/9, 3, -2]]\n"
        "probabilities = [1/4, 1/4, 1/4, 1/4]\n");
    auto s = c.build();
    auto want = fx::quadratic_ratio();
    ASSERT_EQ(s.num_maps(), 4);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s.translations[i].key(), want.translations[i].key());
}

TEST(Config, Families) {
    EXPECT_EQ(Config::parse_string("family = cantor\nd = 3\nm = 4\n").build().num_maps(), 5);
    auto b = Config::parse_string("family = bernoulli_simple_pisot\nk = 3\np = 1/3\n").build();
    EXPECT_EQ(b.field->degree(), 3);
    EXPECT_EQ(b.probabilities[0], frac(1, 3));
    auto v = Config::parse_string("family = convolution\nd = 3\nbase = [1/2, 1/2]\npower = 4\n").build();
    EXPECT_EQ(v.num_maps(), 5);
}

TEST(Config, ErrorsCarryLineNumbers) {
    auto expect_line = [](const std::string& text, const std::string& fragment) {
        try {
            Config::parse_string(text).build();
            ADD_FAILURE() << "no error for: " << text;
        } catch (const InputError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_line("rho = 1/3\ntranslations = [0, 1/3,\n", "line 2");
    expect_line("rho = 1/3\nthis line has no equals sign\n", "line 2");
    expect_line("rho = 1/3\nrho = 1/4\n", "line 2");
    expect_line("rho = 1/0\ntranslations = [0, 1]\n", "line 1");
    expect_line("rho = abc\ntranslations = [0, 1]\n", "line 1");
    expect_line("family = spiral\n", "unknown family");
    expect_line("rho = 1/3\n", "translations");
    expect_line("rho = 1/3\ntranslations = [0, 1]\nprobabilities = [1/2, 1/3]\n", "sum");
}

TEST(Cache, RoundTrip) {
    auto s = fx::eight_maps_quarter();
    auto st = explore(s);
    auto path = (std::filesystem::temp_directory_path() / "ftm_cache_roundtrip.json").string();
    save_structure(st, path);
    auto back = load_structure(s, path);
    EXPECT_EQ(structure_to_json(back), structure_to_json(st));
    ASSERT_EQ(back.size(), st.size());
    for (int cv = 0; cv < static_cast<int>(st.size()); ++cv)
        for (size_t e = 0; e < st.children(cv).size(); ++e)
            EXPECT_EQ(primitive_matrix(back, cv, static_cast<int>(e)), primitive_matrix(st, cv, static_cast<int>(e)));
    auto d1 = decompose(st), d2 = decompose(back);
    EXPECT_EQ(hausdorff_dimension(st, d1).dimension.value, hausdorff_dimension(back, d2).dimension.value);
    std::remove(path.c_str());
}

TEST(Cache, RejectsMismatch) {
    auto s = fx::eight_maps_quarter();
    auto j = structure_to_json(explore(s));
    EXPECT_THROW(structure_from_json(fx::abs_continuous(), j), InputError);
    auto bad = j;
    bad["version"] = kCacheVersion + 1;
    EXPECT_THROW(structure_from_json(s, bad), InputError);
    bad = j;
    bad["format"] = "something else";
    EXPECT_THROW(structure_from_json(s, bad), InputError);
    auto path = (std::filesystem::temp_directory_path() / "ftm_cache_garbage.json").string();
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(load_structure(s, path), InputError);
    std::remove(path.c_str());
}

TEST(Cache, ProbabilitiesMayChange) {
    auto s = fx::eight_maps_quarter();
    auto j = structure_to_json(explore(s));
    auto q = FieldContext::rational(frac(1, 4));
    auto other = build_ifs(q, fx::rationals(q, {0, 1, 2, 3, 4, 5, 8, 9}, 12), fx::uniform(8));
    auto st = structure_from_json(other, j);
    EXPECT_EQ(primitive_matrix(st, st.root(), 0)(0, 0), frac(1, 8));
}
