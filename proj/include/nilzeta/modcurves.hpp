#pragma once

// Finite-field computations by exhaustion: roots in P^1(F_p), the c_{p,I}
// partition, n_{f,p}, plane-curve point counts and smoothness scans.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nilzeta/forms.hpp"

namespace nilzeta {

/// Univariate integer polynomial, coefficients in ascending degree.
struct IntPoly {
    std::vector<Integer> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    static IntPoly from_ints(const std::vector<long>& coeffs);

    [[nodiscard]] int degree() const { return static_cast<int>(c.size()) - 1; }
    [[nodiscard]] const Integer& lead() const { return c.back(); }
    [[nodiscard]] Integer eval(const Integer& x) const;
    [[nodiscard]] std::int64_t eval_mod(std::int64_t x, std::int64_t p) const;
    [[nodiscard]] IntPoly derivative() const;
    [[nodiscard]] std::string to_string(const char* var = "t") const;
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
    void trim();
};

Integer resultant(const IntPoly& f, const IntPoly& g);
Integer discriminant(const IntPoly& f);

/// Point of P^1(F_p): (x : 1) or (1 : 0).
struct P1Point {
    std::int64_t a = 0;
    std::int64_t b = 1;
    friend auto operator<=>(const P1Point&, const P1Point&) = default;
};

/// Roots of the homogenization y2^deg f(y1/y2) in P^1(F_p).
std::set<P1Point> roots_P1(const IntPoly& f, std::int64_t p);

/// Distinct roots of f mod p in F_p.  RamifiedPrime when p divides disc(f).
int n_fp(const IntPoly& f, std::int64_t p);

/// Counts of points of P^1(F_p) by exact vanishing set (1-based indices).
/// BadPrime when p divides a discriminant, a pairwise resultant or a
/// leading coefficient.
std::map<std::vector<int>, std::int64_t> c_pI(const std::vector<IntPoly>& F, std::int64_t p);

struct CurveSpec {
    LinearFormMatrix R; // r x r, 3 variables

    explicit CurveSpec(LinearFormMatrix r);
    [[nodiscard]] int degree() const { return R.rows(); }
    [[nodiscard]] const MPoly& det() const { return det_; }

private:
    MPoly det_;
};

std::int64_t count_points_P2(const CurveSpec& cs, std::int64_t p);

/// No point of P^2(F_p) where det R and all its partials vanish.  This is an
/// F_p-rational scan only.
bool is_smooth_mod_p(const CurveSpec& cs, std::int64_t p);

/// All points of P^2(F_p), normalized with last nonzero coordinate 1.
std::vector<std::vector<std::int64_t>> projective_points(int dim, std::int64_t p);

bool is_prime(std::int64_t n);
/// Prime divisors of |n| (n != 0).
std::set<std::int64_t> prime_divisors(Integer n);

} // namespace nilzeta
