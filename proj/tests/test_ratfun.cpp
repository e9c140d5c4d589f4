#include <doctest.h>

#include "nilzeta/cones.hpp"
#include "nilzeta/errors.hpp"
#include "nilzeta/ratfun.hpp"
#include "oracles.hpp"

using namespace nilzeta;
using testutil::random_geo;
using testutil::series_solves;

namespace {

GeoRatFun geo(int a, int b) { return GeoRatFun::geometric(a, b); }
GeoRatFun mono(long c, int x, int y) { return GeoRatFun::monomial(Rational(c), x, y); }

} // namespace

TEST_CASE("addition identities") {
    CHECK(geo_equal(geo_add(geo(1, 1), GeoRatFun::zero()), geo(1, 1)));
    CHECK(geo_add(geo(1, 1), -geo(1, 1)).is_zero());
    auto s = geo(1, 1) + geo(2, 1);
    CHECK(s.denom().size() == 2);
}

TEST_CASE("multiplication cancels a matching factor") {
    auto f = geo_mul(geo(1, 1), GeoRatFun::polynomial(BivarPoly::one_minus(1, 1)));
    CHECK(geo_equal(f, GeoRatFun::one()));
    CHECK(geo_equal(geo(3, 2) * GeoRatFun::one(), geo(3, 2)));
}

TEST_CASE("geo_equal") {
    GeoRatFun g(Rational(1), {}, BivarPoly(Integer(1)) + BivarPoly::monomial(Integer(1), 1, 1), {{2, 2}});
    CHECK(geo_equal(geo(1, 1), g));
    CHECK_FALSE(geo_equal(geo(1, 1), geo(2, 1)));
}

TEST_CASE("representation is normalized") {
    // 1/(1 - X^-1 Y^-1) = -XY/(1 - XY)
    auto f = geo(-1, -1);
    CHECK(f.denom().count({1, 1}) == 1);
    CHECK(geo_equal(f, -mono(1, 1, 1) * geo(1, 1)));
    GeoRatFun h(Rational(6), {0, 0}, BivarPoly::from_terms({{{1, 0}, Integer(2)}, {{2, 1}, Integer(4)}}), {});
    CHECK(h.numer().content() == 1);
    CHECK(h.numer().min_exponent() == Exponent{0, 0});
}

TEST_CASE("invert_vars") {
    CHECK(geo_equal(invert_vars(geo(1, 1)), -mono(1, 1, 1) * geo(1, 1)));
    CHECK(geo_equal(invert_vars(GeoRatFun::one()), GeoRatFun::one()));
    CHECK(geo_equal(invert_vars(prop32(1)), -mono(1, 1, 0) * prop32(1)));
}

TEST_CASE("functional equations of closed forms") {
    for (int r = 1; r <= 4; ++r) {
        auto fe = check_functional_equation(prop32(r));
        REQUIRE(fe);
        CHECK(*fe == FunctionalEquation{-1, 1, 0});
    }
    auto t = thm11_closed(3);
    CHECK(check_functional_equation(t.A1) == FunctionalEquation{1, 3, 0});
    CHECK(check_functional_equation(t.A2) == FunctionalEquation{1, 4, 0});
    CHECK_FALSE(check_functional_equation(geo(1, 1) + geo(2, 1)));
}

TEST_CASE("series_in_T") {
    auto s = series_in_T(geo(1, 1), 3);
    for (int k = 0; k <= 3; ++k)
        CHECK(s.coeffs[static_cast<std::size_t>(k)] == LaurentX{{k, Integer(1)}});

    auto t = series_in_T(geo(0, 1) * geo(1, 1), 2);
    CHECK(t.coeffs[0] == LaurentX{{0, Integer(1)}});
    CHECK(t.coeffs[1] == LaurentX{{0, Integer(1)}, {1, Integer(1)}});
    CHECK(t.coeffs[2] == LaurentX{{0, Integer(1)}, {1, Integer(1)}, {2, Integer(1)}});

    // b = 0 factors must divide the numerator
    CHECK_THROWS_AS(series_in_T(geo(1, 0), 2), NotExpandable);
    auto r = series_in_T(GeoRatFun::inverse_x_repunit(2) * GeoRatFun::polynomial(BivarPoly(Integer(1)) + BivarPoly::monomial(Integer(1), 1, 0)), 1);
    CHECK(r.coeffs[0] == LaurentX{{0, Integer(1)}});

    CHECK_THROWS_AS(series_in_T(GeoRatFun(Rational(1, 2)), 0), NonIntegral);
    auto neg = series_in_T(geo(-1, 1), 1);
    CHECK(neg.at_rational(Rational(3))[1] == Rational(1, 3));
    CHECK_THROWS_AS(neg.at(Integer(3)), NonIntegral);
}

TEST_CASE("eval_at") {
    CHECK(eval_at(geo(1, 1), Rational(2), Rational(1, 4)) == Rational(2));
    CHECK_THROWS_AS(eval_at(geo(1, 1), Rational(2), Rational(1, 2)), PoleError);
    // (p+1) A_empty = (1 + p^d t^(d+1-n)) / (1 - p^(d+1) t^(d+1-n)) at p=3, t=1/81, d=3, n=1
    Rational t(1, 81), u = t * t * t;
    Rational expect = Rational(1, 4) + Rational(27) * u / (1 - Rational(81) * u);
    CHECK(eval_at(a_empty(3, 1), Rational(3), t) == expect);
}

TEST_CASE("substitute") {
    CHECK(geo_equal(substitute(geo(1, 1), {2, 0}, {0, 1}), geo(2, 1)));
    CHECK(geo_equal(substitute(mono(1, 1, 0), {0, 1}, {1, 0}), mono(1, 0, 1)));
    CHECK_THROWS_AS(substitute(geo(1, 1), {1, 0}, {-1, 0}), PoleError);
}

TEST_CASE("random functions: commutativity, involution, series") {
    std::mt19937 rng(20261019);
    for (int it = 0; it < 60; ++it) {
        auto f = random_geo(rng);
        auto g = random_geo(rng);
        CHECK(geo_equal(f + g, g + f));
        CHECK(geo_equal(f * g, g * f));
        CHECK(geo_equal(invert_vars(invert_vars(f)), f));
        CHECK(geo_equal((f + g) - g, f));
        for (int x : {2, 3}) {
            auto s = series_in_T(f, 6).at_rational(Rational(x));
            CHECK(series_solves(f, Rational(x), s));
        }
    }
}

TEST_CASE("series of closed forms solve their defining relation") {
    for (int x : {2, 3, 5}) {
        CHECK(series_solves(prop32(2), Rational(x), series_in_T(prop32(2), 9).at_rational(Rational(x))));
        auto t = thm11_closed(2);
        CHECK(series_solves(t.A2, Rational(x), series_in_T(t.A2, 9).at_rational(Rational(x))));
    }
}
