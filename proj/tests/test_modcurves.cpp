#include <doctest.h>

#include <random>

#include "nilzeta/errors.hpp"
#include "nilzeta/modcurves.hpp"

using namespace nilzeta;

namespace {

LinearFormMatrix rform(const std::vector<std::vector<std::vector<std::int64_t>>>& e) {
    int r = static_cast<int>(e.size());
    LinearFormMatrix R(r, r, 3);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < 3; ++k)
                R.set(i, j, k, e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
    return R;
}

LinearFormMatrix conic() { return rform({{{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}}}); }

LinearFormMatrix dusautoy_R() {
    return rform({{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}, {{0, 1, 0}, {0, 0, 0}, {1, 0, 0}}});
}

/// Exhaustive count with a numeric determinant at every point.
std::int64_t brute_count(const LinearFormMatrix& R, std::int64_t p) {
    std::int64_t n = 0;
    for (const auto& y : projective_points(2, p)) {
        IntMatrix m = R.eval({y[0], y[1], y[2]});
        Integer d = determinant(m);
        if (d % p == 0)
            ++n;
    }
    return n;
}

LinearFormMatrix change_coords(const LinearFormMatrix& R, const std::vector<std::vector<std::int64_t>>& A) {
    LinearFormMatrix S(R.rows(), R.cols(), 3);
    for (int i = 0; i < R.rows(); ++i)
        for (int j = 0; j < R.cols(); ++j)
            for (int k = 0; k < 3; ++k) {
                std::int64_t c = 0;
                for (int l = 0; l < 3; ++l)
                    c += R.at(i, j).coeffs[static_cast<std::size_t>(l)] * A[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
                S.set(i, j, k, c);
            }
    return S;
}

} // namespace

TEST_CASE("roots in P^1") {
    for (int p : {2, 3, 5, 7})
        CHECK(roots_P1(IntPoly::from_ints({0, 1}), p) == std::set<P1Point>{{0, 1}});
    CHECK(roots_P1(IntPoly::from_ints({1, 0, 1}), 5) == std::set<P1Point>{{2, 1}, {3, 1}});
    CHECK(roots_P1(IntPoly::from_ints({1, 0, 1}), 3).empty());
    // degree drop mod 3 puts a root at infinity
    CHECK(roots_P1(IntPoly::from_ints({1, 3}), 3) == std::set<P1Point>{{1, 0}});
}

TEST_CASE("n_fp") {
    for (int p : {2, 3, 5, 7, 11})
        CHECK(n_fp(IntPoly::from_ints({0, 1}), p) == 1);
    CHECK(n_fp(IntPoly::from_ints({1, 0, 1}), 5) == 2);
    CHECK(n_fp(IntPoly::from_ints({1, 0, 1}), 3) == 0);
    CHECK_THROWS_AS(n_fp(IntPoly::from_ints({1, 0, 1}), 2), RamifiedPrime);
}

TEST_CASE("c_pI") {
    auto a = c_pI({IntPoly::from_ints({0, 1})}, 3);
    CHECK(a[{}] == 3);
    CHECK(a[{1}] == 1);
    auto b = c_pI({IntPoly::from_ints({0, 1}), IntPoly::from_ints({-1, 1})}, 5);
    CHECK(b[{1}] == 1);
    CHECK(b[{2}] == 1);
    CHECK(b[{}] == 4);
    CHECK_THROWS_AS(c_pI({IntPoly::from_ints({0, 1}), IntPoly::from_ints({-3, 1})}, 3), BadPrime);

    std::vector<IntPoly> F{IntPoly::from_ints({1, 0, 1}), IntPoly::from_ints({-2, 1}), IntPoly::from_ints({1, 1, 1})};
    for (int p : {5, 7, 11, 13, 17, 19}) {
        std::map<std::vector<int>, std::int64_t> c;
        try {
            c = c_pI(F, p);
        } catch (const BadPrime&) {
            continue;
        }
        std::int64_t total = 0;
        for (const auto& [I, k] : c) {
            CHECK(k >= 0);
            total += k;
        }
        CHECK(total == p + 1);
        for (int i = 0; i < 3; ++i) {
            std::int64_t single = c.count({i + 1}) ? c[{i + 1}] : 0;
            CHECK(single == n_fp(F[static_cast<std::size_t>(i)], p));
        }
    }
}

TEST_CASE("resultants and discriminants") {
    CHECK(discriminant(IntPoly::from_ints({1, 0, 1})) == -4);
    CHECK(abs(resultant(IntPoly::from_ints({0, 1}), IntPoly::from_ints({-1, 1}))) == 1);
    CHECK(abs(resultant(IntPoly::from_ints({0, 1}), IntPoly::from_ints({-3, 1}))) == 3);
}

TEST_CASE("point counts") {
    CurveSpec c(conic());
    for (int p : {3, 5, 7, 11, 13})
        CHECK(count_points_P2(c, p) == p + 1);
    CurveSpec du(dusautoy_R());
    for (int p : {3, 5, 7, 11})
        CHECK(count_points_P2(du, p) == brute_count(dusautoy_R(), p));
    CHECK(count_points_P2(du, 5) == 8);
    CurveSpec whole(rform({{{1, 0, 0}, {1, 0, 0}}, {{1, 0, 0}, {1, 0, 0}}}));
    for (int p : {2, 3, 5})
        CHECK(count_points_P2(whole, p) == p * p + p + 1);
    CHECK_THROWS(CurveSpec(rform({{{1, 0, 0}}})));
}

TEST_CASE("point counts are invariant under coordinate changes") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 6; ++it) {
        std::vector<std::vector<std::int64_t>> A{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int step = 0; step < 5; ++step) {
            std::size_t i = rng() % 3, j = rng() % 3;
            if (i == j)
                continue;
            int k = c(rng);
            for (std::size_t t = 0; t < 3; ++t)
                A[i][t] += k * A[j][t];
        }
        for (int p : {5, 7}) {
            CHECK(count_points_P2(CurveSpec(change_coords(dusautoy_R(), A)), p) == count_points_P2(CurveSpec(dusautoy_R()), p));
        }
    }
}

TEST_CASE("smoothness") {
    CHECK(is_smooth_mod_p(CurveSpec(conic()), 5));
    CurveSpec dbl(rform({{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}}));
    for (int p : {2, 3, 5, 7})
        CHECK_FALSE(is_smooth_mod_p(dbl, p));
    CHECK(is_smooth_mod_p(CurveSpec(dusautoy_R()), 5));
    CHECK(is_smooth_mod_p(CurveSpec(dusautoy_R()), 7));
}

TEST_CASE("primes") {
    CHECK(prime_divisors(Integer(360)) == std::set<std::int64_t>{2, 3, 5});
    CHECK(prime_divisors(Integer(-7)) == std::set<std::int64_t>{7});
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(projective_points(2, 3).size() == 13);
}
