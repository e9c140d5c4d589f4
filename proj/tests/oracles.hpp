#pragma once

// Independent reference computations shared by the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "nilzeta/ratfun.hpp"

namespace testutil {

using nilzeta::BivarPoly;
using nilzeta::Exponent;
using nilzeta::GeoRatFun;
using nilzeta::Integer;
using nilzeta::Rational;

inline Rational rpow(const Rational& x, int e) {
    Rational r = 1;
    Rational b = e < 0 ? Rational(1) / x : x;
    for (int i = 0; i < (e < 0 ? -e : e); ++i)
        r *= b;
    return r;
}

/// Coefficients of Y^0..Y^K of a polynomial in X, Y at X = x (rational).
inline std::vector<Rational> poly_in_y(const BivarPoly& p, const Rational& x, Exponent shift, int K) {
    std::vector<Rational> out(static_cast<std::size_t>(K) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) {
        int y = e.y + shift.y;
        if (y >= 0 && y <= K)
            out[static_cast<std::size_t>(y)] += Rational(c) * rpow(x, e.x + shift.x);
    }
    return out;
}

/// True when S * prod(1 - x^a Y^b) agrees with the numerator of f to
/// order K.  Only denominators with b >= 1 are handled.
inline bool series_solves(const GeoRatFun& f, const Rational& x, const std::vector<Rational>& S) {
    int K = static_cast<int>(S.size()) - 1;
    std::vector<Rational> lhs = S;
    for (const auto& e : f.denom_list()) {
        std::vector<Rational> next = lhs;
        for (int k = e.y; k <= K; ++k)
            next[static_cast<std::size_t>(k)] -= rpow(x, e.x) * lhs[static_cast<std::size_t>(k - e.y)];
        lhs = next;
    }
    auto rhs = poly_in_y(f.numer(), x, f.prefactor(), K);
    for (auto& v : rhs)
        v *= f.scalar();
    return lhs == rhs;
}

/// Random function with small exponents and denominators having b >= 1.
inline GeoRatFun random_geo(std::mt19937& rng, int max_terms = 4, int max_den = 3) {
    std::uniform_int_distribution<int> ex(0, 5), ey(0, 4), co(-3, 3), nd(0, max_den), nt(1, max_terms), db(1, 3);
    BivarPoly num;
    int terms = nt(rng);
    for (int i = 0; i < terms; ++i)
        num.add_term({ex(rng), ey(rng)}, Integer(co(rng)));
    if (num.is_zero())
        num = BivarPoly(Integer(1));
    std::vector<Exponent> den;
    int k = nd(rng);
    for (int i = 0; i < k; ++i)
        den.push_back({ex(rng), db(rng)});
    return GeoRatFun(Rational(1), {}, num, den);
}

} // namespace testutil
