#pragma once

// Cone-decomposition generating functions and the closed forms for A(p, T)
// of rings with derived rank 2 and of the hyperbolic rings with d' = 3.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilzeta/liering.hpp"
#include "nilzeta/modcurves.hpp"
#include "nilzeta/ratfun.hpp"

namespace nilzeta {

/// psi(a, b) = p^(ad) T^(c_0 b + sum_r c_r min(a, e_r b) + c_(sigma+1) a)
struct ConeData {
    int d = 0;
    std::vector<int> thresholds; // e_1 < ... < e_sigma, each > 1
    std::vector<int> coeffs;     // c_0, c_1, ..., c_(sigma+1)

    [[nodiscard]] int sigma() const { return static_cast<int>(thresholds.size()); }
    void validate() const;
    friend bool operator==(const ConeData&, const ConeData&) = default;
};

/// Multiplicities of a direct sum of even blocks over polynomials f_1..f_m
/// together with n odd blocks.
struct MultiplicityData {
    std::vector<std::vector<int>> mult; // e_(i1), ..., e_(i r_i)
    std::vector<int> degrees;           // deg f_i
    int odd_total = 0;                  // sum of l_k
    int odd_count = 0;                  // n

    [[nodiscard]] int d() const;
};

/// Groups the even blocks of P by polynomial, in order of first appearance.
/// The polynomials are returned through F.
MultiplicityData multiplicity_data(const Presentation& P, std::vector<IntPoly>& F);

/// I holds 1-based indices into md.mult; EmptyIndexSet when I is empty.
ConeData cone_data(const MultiplicityData& md, const std::vector<int>& I);

/// A_I(p, T), including its 1/(p+1) share.
GeoRatFun cone_gf(const ConeData& cd);

/// A_emptyset(p, T) = (1 + X^d Y^(d+1-n)) / ((p+1)(1 - X^(d+1) Y^(d+1-n))).
GeoRatFun a_empty(int d, int n);

/// (p+1) A_empty + sum over nonempty I of c_I (A_I - A_empty).  p stays
/// symbolic and c_emptyset enters only through p + 1 - sum c_I.
GeoRatFun assemble_A_from_counts(const MultiplicityData& md, const std::map<std::vector<int>, std::int64_t>& counts);

/// As above with c_{p,I} computed from F.  BadPrime at excluded primes.
GeoRatFun assemble_A(const MultiplicityData& md, const std::vector<IntPoly>& F, std::int64_t p);

// ---------------------------------------------------------------- closed forms

/// (1 + X^(2r+1) Y^(2r+1)) / (1 - X^(2r+2) Y^(2r+1))
GeoRatFun prop32(int r);

struct Prop34 {
    GeoRatFun part1; // P_1 / denominator
    GeoRatFun part2; // P_2 / denominator
    [[nodiscard]] GeoRatFun at(std::int64_t n_fp) const;
};

/// Even block of size r with g = f^e.
Prop34 prop34(int r, int e);

struct Thm11 {
    GeoRatFun A1;
    GeoRatFun A2;
    [[nodiscard]] GeoRatFun at(std::int64_t points) const { return A1 + A2 * Rational(points); }
};

/// A_1, A_2 as displayed for the hyperbolic rings around an r x r matrix.
Thm11 thm11_closed(int r);

/// Pieces of the sector-family assembly for d' = 3.
struct Thm11Pieces {
    GeoRatFun off_off;        // A_off/off from its geometric sums
    GeoRatFun off_off_closed; // the displayed quotient
    GeoRatFun smooth_boundary;        // (p^s,1,1) boundary sum via the 3-cone table
    GeoRatFun smooth_boundary_closed; // its displayed quotient
    GeoRatFun line_boundary;          // (p^t,p^t,1) boundary sum
    GeoRatFun interior;               // p times the two boundary sums
    GeoRatFun smpt_off;               // A_sm.pt./off
};

Thm11Pieces thm11_pieces(int r);

/// A_1, A_2 assembled from the pieces; throws Error when the result differs
/// from thm11_closed.
Thm11 thm11_A(int r);

/// Product form used for display: prod numer_factors over
/// prod_{i=0}^{zeta_top}(1 - X^i Y) * prod denoms.  A single-term factor
/// prints as a bare monomial.
struct FactoredForm {
    std::vector<BivarPoly> numer_factors;
    int zeta_top = -1; // -1: no product block
    std::vector<Exponent> denoms;

    [[nodiscard]] GeoRatFun value() const;
    [[nodiscard]] std::string numerator_string() const;
    [[nodiscard]] std::string denominator_string() const;
};

/// Polynomial in the display convention: terms by ascending Y then X
/// degree, braces only around multi-digit exponents.
std::string display_poly(const BivarPoly& p);
std::string display_monomial(Exponent e);
/// Whole function in the display convention, denominators by descending
/// (Y, X) degree.
std::string display_form(const GeoRatFun& f);

struct Thm11Factored {
    FactoredForm A1;
    FactoredForm A2;
};

Thm11Factored thm11_factored(int r);

/// W_i = zeta_{Z_p^d} zeta_p((d+d')s - dd') A_i for the hyperbolic ring of
/// an r x r matrix (d = 2r, d' = 3).
struct WPair {
    FactoredForm W1;
    FactoredForm W2;
};

WPair w_factored(int r);

/// du Sautoy's curve ring, r = 3.
inline WPair dusautoy() { return w_factored(3); }

} // namespace nilzeta
