#pragma once

// Exact arithmetic on bivariate rational functions in X (standing for p)
// and Y (standing for T = p^-s) whose denominators are products of
// geometric factors (1 - X^a Y^b).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nilzeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent pair (x, y) of a monomial X^x Y^y.
struct Exponent {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Exponent&, const Exponent&) = default;
    Exponent operator+(const Exponent& o) const { return {x + o.x, y + o.y}; }
    Exponent operator-(const Exponent& o) const { return {x - o.x, y - o.y}; }
    Exponent operator-() const { return {-x, -y}; }
};

/// Sparse bivariate polynomial with integer coefficients.  Exponents may be
/// negative while intermediate Laurent expressions are formed; the numerators
/// stored inside GeoRatFun are always shifted to nonnegative exponents.
class BivarPoly {
public:
    using TermMap = std::map<Exponent, Integer>;

    BivarPoly() = default;
    explicit BivarPoly(const Integer& constant);
    static BivarPoly monomial(const Integer& c, int x, int y);
    /// 1 - X^a Y^b
    static BivarPoly one_minus(int a, int b);
    static BivarPoly from_terms(const std::vector<std::pair<Exponent, Integer>>& terms);

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] Integer coeff(Exponent e) const;

    /// Componentwise minimum / maximum of the exponents; requires nonzero.
    [[nodiscard]] Exponent min_exponent() const;
    [[nodiscard]] Exponent max_exponent() const;
    /// gcd of the coefficients (0 for the zero polynomial).
    [[nodiscard]] Integer content() const;

    void add_term(Exponent e, const Integer& c);
    BivarPoly& operator+=(const BivarPoly& o);
    BivarPoly& operator-=(const BivarPoly& o);
    BivarPoly& operator*=(const Integer& c);
    BivarPoly& operator*=(const BivarPoly& o);
    /// Exact division of every coefficient by c.
    BivarPoly& divide_exact(const Integer& c);

    [[nodiscard]] BivarPoly shifted(Exponent e) const;
    /// Substitute X -> X^-1, Y -> Y^-1 (exponents negated).
    [[nodiscard]] BivarPoly reflected() const;
    [[nodiscard]] BivarPoly pow(unsigned k) const;

    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(BivarPoly a, const Integer& c) { return a *= c; }
    friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

    [[nodiscard]] std::string to_string() const;

private:
    TermMap terms_;
};

/// Univariate Laurent polynomial in X with integer coefficients.
using LaurentX = std::map<int, Integer>;

/// Truncated power series in Y whose coefficients are Laurent polynomials in X.
struct SeriesInT {
    int order = 0;
    std::vector<LaurentX> coeffs; // size order + 1

    /// Evaluate every coefficient at X = x.  Throws NonIntegral when a value is
    /// not an integer.
    [[nodiscard]] std::vector<Integer> at(const Integer& x) const;
    [[nodiscard]] std::vector<Rational> at_rational(const Rational& x) const;
    /// True when no coefficient carries a negative power of X.
    [[nodiscard]] bool is_polynomial_in_x() const;
};

/// scalar * X^u Y^v * numer / prod (1 - X^a Y^b).
///
/// Denominator pairs are normalized to b > 0, or b == 0 and a > 0, so the
/// representation of a given product of geometric factors is unique.  The
/// numerator is kept primitive with positive leading coefficient and minimum
/// exponent (0, 0); the zero function has no denominator.
class GeoRatFun {
public:
    using DenomMap = std::map<Exponent, int>;

    GeoRatFun() = default; // zero
    explicit GeoRatFun(const Rational& c);
    GeoRatFun(const Rational& scalar, Exponent prefactor, BivarPoly numer, const std::vector<Exponent>& denom);

    static GeoRatFun zero() { return {}; }
    static GeoRatFun one() { return GeoRatFun(Rational(1)); }
    static GeoRatFun monomial(const Rational& c, int x, int y);
    /// 1 / (1 - X^a Y^b)
    static GeoRatFun geometric(int a, int b);
    static GeoRatFun polynomial(const BivarPoly& p);
    /// 1 / (1 + X + ... + X^(k-1)), i.e. (1 - X) / (1 - X^k).
    static GeoRatFun inverse_x_repunit(int k);

    [[nodiscard]] const Rational& scalar() const { return scalar_; }
    [[nodiscard]] Exponent prefactor() const { return prefactor_; }
    [[nodiscard]] const BivarPoly& numer() const { return numer_; }
    [[nodiscard]] const DenomMap& denom() const { return denom_; }
    [[nodiscard]] std::vector<Exponent> denom_list() const;
    [[nodiscard]] bool is_zero() const { return numer_.is_zero(); }

    GeoRatFun& operator+=(const GeoRatFun& o);
    GeoRatFun& operator-=(const GeoRatFun& o);
    GeoRatFun& operator*=(const GeoRatFun& o);
    GeoRatFun& operator*=(const Rational& c);
    GeoRatFun operator-() const;

    friend GeoRatFun operator+(GeoRatFun a, const GeoRatFun& b) { return a += b; }
    friend GeoRatFun operator-(GeoRatFun a, const GeoRatFun& b) { return a -= b; }
    friend GeoRatFun operator*(GeoRatFun a, const GeoRatFun& b) { return a *= b; }
    friend GeoRatFun operator*(GeoRatFun a, const Rational& c) { return a *= c; }
    friend GeoRatFun operator*(const Rational& c, GeoRatFun a) { return a *= c; }

    /// Numerator of the cross-multiplied form over the given denominator
    /// multiset, which must contain this function's denominator.
    [[nodiscard]] BivarPoly numerator_over(const DenomMap& common, Rational& scalar_out) const;

    [[nodiscard]] std::string to_string() const;

private:
    void normalize();
    void push_denominator(Exponent e, int mult);

    Rational scalar_{0};
    Exponent prefactor_{};
    BivarPoly numer_;
    DenomMap denom_;
};

GeoRatFun geo_add(const GeoRatFun& f, const GeoRatFun& g);
GeoRatFun geo_mul(const GeoRatFun& f, const GeoRatFun& g);
/// Equality as rational functions, decided by cross-multiplication.
bool geo_equal(const GeoRatFun& f, const GeoRatFun& g);
/// f(X^-1, Y^-1) renormalized into geometric form.
GeoRatFun invert_vars(const GeoRatFun& f);
/// f(m_X, m_Y) for Laurent monomials m_X = X^x_to.x Y^x_to.y and likewise
/// m_Y.  PoleError when a denominator factor becomes (1 - 1).
GeoRatFun substitute(const GeoRatFun& f, Exponent x_to, Exponent y_to);

struct FunctionalEquation {
    int sign = 1;
    int a = 0;
    int b = 0;
    friend bool operator==(const FunctionalEquation&, const FunctionalEquation&) = default;
};

/// Returns (sign, a, b) with f(1/X, 1/Y) = sign * X^a Y^b * f(X, Y) when such
/// a monomial relation exists.
std::optional<FunctionalEquation> check_functional_equation(const GeoRatFun& f);

/// Expansion in Y up to Y^order.  Factors with b == 0 must divide the
/// numerator exactly; otherwise NotExpandable.  Integer coefficients are
/// required (NonIntegral otherwise).
SeriesInT series_in_T(const GeoRatFun& f, int order);

/// Exact value at (x, y); PoleError when a denominator factor vanishes.
Rational eval_at(const GeoRatFun& f, const Rational& x, const Rational& y);

std::string format_laurent(const LaurentX& p, const char* var = "X");

} // namespace nilzeta
