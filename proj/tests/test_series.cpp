#include <random>

#include "doctest.h"
#include "vlat/series.hpp"

using namespace vlat;

namespace {

LaurentSeries ser(std::map<int, Scalar> t, Window w) {
    LaurentSeries s(w);
    for (auto& [e, c] : t) s.set(e, c);
    return s;
}

LaurentSeries random_series(std::mt19937& rng, int lo, int hi, int wlo, int whi) {
    std::uniform_int_distribution<int> c(-3, 3), e(lo, hi);
    LaurentSeries s(Window{wlo, whi});
    for (int k = 0; k < 4; ++k) s.add_to(e(rng), Scalar(c(rng)));
    return s;
}

}  // namespace

TEST_CASE("series products and sums") {
    auto p = series_mul(LaurentSeries::polynomial({{1, 1}, {2, 1}}), LaurentSeries::polynomial({{-1, 1}}));
    CHECK(series_agree(p.with_window({0, 1}), ser({{0, 1}, {1, 1}}, {0, 1})));
    auto q = series_mul(ser({{0, 1}, {1, 1}}, {0, 5}), ser({{0, 1}, {1, -1}}, {0, 5}));
    CHECK(q.window() == Window{0, 5});
    CHECK(q.terms() == std::map<int, Scalar>{{0, 1}, {2, -1}});
    CHECK_THROWS_AS(series_add(LaurentSeries(Window{0, 3}), LaurentSeries(Window{5, 9})), EmptyWindow);
}

TEST_CASE("derivatives") {
    CHECK(series_derive(LaurentSeries::polynomial({{2, 1}}), 1).terms() == std::map<int, Scalar>{{1, 2}});
    CHECK(series_derive(LaurentSeries::polynomial({{-1, 1}}), 1).terms() == std::map<int, Scalar>{{-2, -1}});
    LaurentSeries e(Window{0, 6});
    mpz_class f = 1;
    for (int n = 0; n <= 6; ++n) {
        if (n) f *= n;
        e.set(n, Scalar(mpq_class(1, f)));
    }
    auto d = series_derive(e, 1);
    CHECK(series_agree(d, e.truncated(5)));
    CHECK(d.window().hi == 5);
}

TEST_CASE("exponentials") {
    auto one = series_exp(LaurentSeries(Window{0, 4}));
    CHECK(one.terms() == std::map<int, Scalar>{{0, 1}});
    auto e = series_exp(ser({{1, 1}}, {0, 3}));
    CHECK(e.terms() == std::map<int, Scalar>{{0, 1}, {1, 1}, {2, Scalar(1, 2)}, {3, Scalar(1, 6)}});
    CHECK_THROWS_AS(series_exp(LaurentSeries::polynomial({{-1, 1}})), NotFormallyNilpotent);
    CHECK_THROWS_AS(series_exp(ser({{0, 1}}, {0, 3})), NotFormallyNilpotent);
}

TEST_CASE("associativity and exp inverse on random series") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_series(rng, -2, 4, -2, 8), g = random_series(rng, -1, 5, -1, 8),
             h = random_series(rng, 0, 3, 0, 8);
        auto a = series_mul(series_mul(f, g), h), b = series_mul(f, series_mul(g, h));
        CHECK(a.window() == b.window());
        CHECK(series_agree(a, b));

        auto p = random_series(rng, 1, 4, 0, 9);
        auto prod = series_mul(series_exp(p), series_exp(-p));
        CHECK(series_agree(prod, ser({{0, 1}}, {0, 9})));
    }
}

TEST_CASE("binomial expansions") {
    auto b1 = iota_binom(1, Direction::X1Major, 4);
    CHECK(b1.terms() == std::map<std::pair<int, int>, Scalar>{{{1, 0}, 1}, {{0, 1}, -1}});

    auto m1 = iota_binom(-1, Direction::X1Major, 4);
    for (int k = 0; k <= 4; ++k) CHECK(m1.coeff(-1 - k, k) == Scalar(1));
    auto m2 = iota_binom(-1, Direction::X2Major, 4);
    for (int k = 0; k <= 4; ++k) CHECK(m2.coeff(k, -1 - k) == Scalar(-1));

    for (int n = 0; n <= 5; ++n)
        CHECK(iota_binom(n, Direction::X1Major, 3).terms() == iota_binom(n, Direction::X2Major, 3).terms());

    // (x1 - x2)^n (x1 - x2)^-n = 1 inside one direction
    for (int n = 1; n <= 4; ++n)
        for (auto d : {Direction::X1Major, Direction::X2Major}) {
            auto p = bi_mul(iota_binom(-n, d, 8), iota_binom(n, d, 8));
            for (auto& [e, c] : p.terms())
                if (p.in_window(e.first, e.second) && (d == Direction::X1Major ? e.second <= 8 - n : e.first <= 8 - n))
                    CHECK(c == Scalar(e == std::pair{0, 0} ? 1 : 0));
        }
    CHECK_THROWS_AS(iota_binom(-1, Direction::None, 3), UnsupportedExpansionDirection);
}

TEST_CASE("affine substitution") {
    BiSeries x1(Window{1, kPosInf}, Window{0, kPosInf});
    x1.add_to(1, 0, Scalar(1));
    auto s = subst_affine(x1, 3);
    CHECK(s.terms() == std::map<std::pair<int, int>, Scalar>{{{0, 1}, 1}, {{1, 0}, 1}});

    BiSeries inv(Window{-1, kPosInf}, Window{0, kPosInf}, Direction::X1Major);
    inv.add_to(-1, 0, Scalar(1));
    auto g = subst_affine(inv, 4);
    for (int k = 0; k <= 4; ++k) CHECK(g.coeff(k, -1 - k) == Scalar(k % 2 ? -1 : 1));

    for (int k = 0; k <= 4; ++k) {
        auto t = subst_affine(iota_binom(k, Direction::X1Major, 6), 6);
        for (auto& [e, c] : t.terms()) CHECK(c == Scalar(e == std::pair{k, 0} ? 1 : 0));
    }
    CHECK_THROWS_AS(subst_affine(iota_binom(-1, Direction::X2Major, 3), 3), UnsupportedExpansionDirection);
}

TEST_CASE("polynomial parsing") {
    CHECK(poly_parse("1 + x") == Poly{{0, 1}, {1, 1}});
    CHECK(poly_parse("x^-1") == Poly{{-1, 1}});
    CHECK(poly_parse("-1/2 x^2 + 3") == Poly{{0, 3}, {2, Scalar(-1, 2)}});
    CHECK(poly_parse(poly_str(Poly{{-2, Scalar(3, 4)}, {3, -1}})) == Poly{{-2, Scalar(3, 4)}, {3, -1}});
    CHECK_THROWS_AS(poly_parse("x^"), std::invalid_argument);
    CHECK(poly_derive(Poly{{3, 1}}, 2) == Poly{{1, 6}});
    CHECK(poly_dilate(Poly{{1, 1}, {2, 1}}, Scalar(-1)) == Poly{{1, -1}, {2, 1}});
}
