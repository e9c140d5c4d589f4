#include "nilzeta/cones.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "nilzeta/errors.hpp"

namespace nilzeta {

namespace {

GeoRatFun mono(int x, int y) { return GeoRatFun::monomial(Rational(1), x, y); }

BivarPoly one_plus(int a, int b) { return BivarPoly(Integer(1)) + BivarPoly::monomial(Integer(1), a, b); }

/// 1 - p^-1
GeoRatFun one_minus_pinv() { return GeoRatFun::one() - mono(-1, 0); }

/// X^a Y^b / (1 - X^a Y^b)
GeoRatFun G(int a, int b) { return mono(a, b) * GeoRatFun::geometric(a, b); }

std::string exp_str(int e) {
    std::string s = std::to_string(e);
    return s.size() == 1 ? s : "{" + s + "}";
}

} // namespace

void ConeData::validate() const {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] <= 1)
            throw BadParams("ConeData: thresholds must exceed 1");
        if (i > 0 && thresholds[i] <= thresholds[i - 1])
            throw BadParams("ConeData: thresholds must be strictly increasing");
    }
    if (coeffs.size() != thresholds.size() + 2)
        throw BadParams("ConeData: expected sigma + 2 coefficients");
}

int MultiplicityData::d() const {
    int d = 2 * odd_total + odd_count;
    for (std::size_t i = 0; i < mult.size(); ++i)
        d += 2 * degrees[i] * std::accumulate(mult[i].begin(), mult[i].end(), 0);
    return d;
}

MultiplicityData multiplicity_data(const Presentation& P, std::vector<IntPoly>& F) {
    if (!P.has_blocks())
        throw UnsupportedFamily("multiplicity data needs a block presentation");
    MultiplicityData md;
    F.clear();
    for (const auto& b : P.blocks) {
        if (b.kind == BlockInfo::Kind::Odd) {
            md.odd_total += b.r;
            ++md.odd_count;
            continue;
        }
        auto it = std::find_if(F.begin(), F.end(), [&](const IntPoly& f) { return f.c == b.f.c; });
        std::size_t idx = static_cast<std::size_t>(it - F.begin());
        if (it == F.end()) {
            F.push_back(b.f);
            md.mult.emplace_back();
            md.degrees.push_back(b.f.degree());
        }
        md.mult[idx].push_back(b.e);
    }
    return md;
}

ConeData cone_data(const MultiplicityData& md, const std::vector<int>& I) {
    if (I.empty())
        throw EmptyIndexSet("cone_data: index set is empty");
    std::map<int, int> count;
    for (int i : I) {
        if (i < 1 || i > static_cast<int>(md.mult.size()))
            throw BadParams("cone_data: index out of range");
        for (int e : md.mult[static_cast<std::size_t>(i - 1)])
            ++count[e];
    }
    ConeData cd;
    cd.d = md.d();
    int c0 = 0;
    std::vector<int> mid;
    for (auto [e, k] : count) {
        if (e == 1) {
            c0 -= 2 * k;
        } else {
            cd.thresholds.push_back(e);
            mid.push_back(-2 * k);
        }
    }
    cd.coeffs.push_back(c0);
    cd.coeffs.insert(cd.coeffs.end(), mid.begin(), mid.end());
    cd.coeffs.push_back(cd.d + 1 - md.odd_count);
    return cd;
}

GeoRatFun cone_gf(const ConeData& cd) {
    cd.validate();
    const int s = cd.sigma();
    const int d = cd.d;
    const auto& c = cd.coeffs;
    const auto& e = cd.thresholds; // e[r-1] = e_r

    auto S = [&](int j) {
        int t = 0;
        for (int r = j; r <= s + 1; ++r)
            t += c[static_cast<std::size_t>(r)];
        return t;
    };
    auto yshift = [&](int j) {
        int t = c[0];
        for (int r = 1; r < j; ++r)
            t += c[static_cast<std::size_t>(r)] * e[static_cast<std::size_t>(r - 1)];
        return t;
    };

    GeoRatFun out = GeoRatFun::inverse_x_repunit(2);
    const GeoRatFun w = one_minus_pinv();

    GeoRatFun F0 = mono(1, 1) * GeoRatFun::geometric(1, 1);
    out += substitute(F0, {d + 1, S(1)}, {-1, c[0]});

    GeoRatFun F1(Rational(1), {2, 1}, BivarPoly(Integer(1)), {{1, 0}, {1, 1}});
    if (s >= 1)
        F1 -= GeoRatFun(Rational(1), {e[0], 1}, BivarPoly(Integer(1)), {{e[0], 1}, {1, 0}});
    out += w * substitute(F1, {d + 1, S(1)}, {-1, c[0]});

    for (int j = 2; j <= s; ++j) {
        int lo = e[static_cast<std::size_t>(j - 2)];
        int hi = e[static_cast<std::size_t>(j - 1)];
        BivarPoly num = BivarPoly::monomial(Integer(1), lo, 0) - BivarPoly::monomial(Integer(1), hi, 0);
        GeoRatFun Fj(Rational(1), {0, 1}, num, {{lo, 1}, {hi, 1}, {1, 0}});
        out += w * substitute(Fj, {d + 1, S(j)}, {-1, yshift(j)});
    }

    if (s >= 1) {
        int es = e[static_cast<std::size_t>(s - 1)];
        GeoRatFun Fl(Rational(1), {es, 1}, BivarPoly(Integer(1)), {{es, 1}, {1, 0}});
        out += w * substitute(Fl, {d + 1, S(s + 1)}, {-1, yshift(s + 1)});
    }
    return out;
}

GeoRatFun a_empty(int d, int n) {
    GeoRatFun f(Rational(1), {}, one_plus(d, d + 1 - n), {{d + 1, d + 1 - n}});
    return f * GeoRatFun::inverse_x_repunit(2);
}

GeoRatFun assemble_A_from_counts(const MultiplicityData& md, const std::map<std::vector<int>, std::int64_t>& counts) {
    const GeoRatFun Ae = a_empty(md.d(), md.odd_count);
    GeoRatFun out = Ae * GeoRatFun::polynomial(one_plus(1, 0));
    for (const auto& [I, k] : counts) {
        if (I.empty() || k == 0)
            continue;
        out += Rational(static_cast<long>(k)) * (cone_gf(cone_data(md, I)) - Ae);
    }
    return out;
}

GeoRatFun assemble_A(const MultiplicityData& md, const std::vector<IntPoly>& F, std::int64_t p) {
    if (F.size() != md.mult.size())
        throw BadParams("assemble_A: one polynomial per multiplicity vector expected");
    auto counts = c_pI(F, p);
    std::int64_t total = 0;
    for (const auto& [I, k] : counts)
        total += k;
    if (total != p + 1)
        throw Error("assemble_A: the counts c_{p,I} do not sum to p + 1");
    return assemble_A_from_counts(md, counts);
}

// ------------------------------------------------------------------ closed forms

GeoRatFun prop32(int r) {
    if (r < 1)
        throw BadParams("prop32: r >= 1 required");
    return GeoRatFun(Rational(1), {}, one_plus(2 * r + 1, 2 * r + 1), {{2 * r + 2, 2 * r + 1}});
}

GeoRatFun Prop34::at(std::int64_t n_fp) const { return part1 + part2 * Rational(static_cast<long>(n_fp)); }

Prop34 prop34(int r, int e) {
    if (r < 1 || e < 1 || r % e != 0)
        throw BadParams("prop34: need r >= 1, e >= 1 and e | r");
    const int a = 2 * r + 1;
    const int b = 2 * r - 1;
    std::vector<Exponent> den{{a, b}, {a, a}, {a * e - 1, b * e}};
    BivarPoly P1 = BivarPoly::one_minus(a, b) * one_plus(2 * r, a) * BivarPoly::one_minus(a * e - 1, b * e);
    BivarPoly P2 = BivarPoly::monomial(Integer(1), 2 * r, b) * BivarPoly::one_minus(0, 2) * BivarPoly::one_minus(a * e, b * e);
    return {GeoRatFun(Rational(1), {}, P1, den), GeoRatFun(Rational(1), {}, P2, den)};
}

namespace {

BivarPoly a1_numer(int r) {
    return BivarPoly::from_terms({{{0, 0}, Integer(1)},
                                  {{2 * r, 2 * r + 1}, Integer(1)},
                                  {{2 * r + 1, 2 * r + 1}, Integer(1)},
                                  {{4 * r, 2 * r + 2}, Integer(1)},
                                  {{4 * r + 1, 2 * r + 2}, Integer(1)},
                                  {{6 * r + 1, 4 * r + 3}, Integer(1)}});
}

void check_r(int r) {
    if (r < 2)
        throw BadParams("r >= 2 required");
}

using Exp3 = std::array<int, 3>;

/// Image under X^a Y^b Z^c -> m_X^a m_Y^b m_Z^c of
/// sum_t c_t X^t / prod (1 - X^q), all over three variables.
struct Row3 {
    int n;
    std::vector<std::pair<Exp3, int>> numer;
    std::vector<Exp3> denom;
};

GeoRatFun image(const Row3& row, Exponent mX, Exponent mY, Exponent mZ) {
    auto img = [&](const Exp3& t) {
        return Exponent{t[0] * mX.x + t[1] * mY.x + t[2] * mZ.x, t[0] * mX.y + t[1] * mY.y + t[2] * mZ.y};
    };
    GeoRatFun num;
    for (const auto& [t, c] : row.numer) {
        Exponent e = img(t);
        num += GeoRatFun::monomial(Rational(c), e.x, e.y);
    }
    for (const auto& q : row.denom) {
        Exponent e = img(q);
        if (e == Exponent{})
            throw PoleError("three-cone image has a vanishing denominator");
        num *= GeoRatFun::geometric(e.x, e.y);
    }
    return num;
}

const Row3 kTable2[4] = {
    {1, {{{1, 1, 1}, 1}}, {{1, 1, 1}}},
    {2, {{{2, 1, 2}, 1}}, {{1, 1, 1}, {1, 0, 1}}},
    {2, {{{2, 2, 1}, 1}}, {{1, 1, 1}, {1, 1, 0}}},
    {3, {{{2, 1, 1}, 1}, {{4, 2, 2}, -1}}, {{1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 0, 0}}},
};

GeoRatFun b21() { return GeoRatFun::polynomial(one_plus(1, 0)); }
GeoRatFun b32() { return GeoRatFun::polynomial(one_plus(1, 0) + BivarPoly::monomial(Integer(1), 2, 0)); }

} // namespace

Thm11 thm11_closed(int r) {
    check_r(r);
    const Exponent big{4 * r + 2, 2 * r + 2}, mid{2 * r + 2, 2 * r + 1}, low{2 * r + 1, 2 * r - 1};
    GeoRatFun A1(Rational(1), {}, a1_numer(r), {big, mid});
    BivarPoly n2 = BivarPoly::one_minus(0, 1) * one_plus(0, 1) * one_plus(4 * r + 1, 2 * r + 2);
    GeoRatFun A2(Rational(1), {2 * r, 2 * r - 1}, n2, {big, mid, low});
    return {A1, A2};
}

Thm11Pieces thm11_pieces(int r) {
    check_r(r);
    const GeoRatFun inv21 = GeoRatFun::inverse_x_repunit(2);
    const GeoRatFun inv32 = GeoRatFun::inverse_x_repunit(3);
    const Exponent big{4 * r + 2, 2 * r + 2}, mid{2 * r + 2, 2 * r + 1}, low{2 * r + 1, 2 * r - 1};
    Thm11Pieces out;

    // types (p^s,1,1) and (p^t,p^t,1) off the curve, and their interior
    const GeoRatFun Gs = G(mid.x, mid.y);
    const GeoRatFun Gt = G(big.x, big.y);
    out.off_off = inv32 * inv21 + inv21 * (mono(-2, 0) * Gs + mono(-2, 0) * Gt) + mono(-3, 0) * Gs * Gt;
    out.off_off_closed = GeoRatFun(Rational(1), {}, a1_numer(r), {big, mid}) * inv32 * inv21;

    const Exponent mX[4] = {{2 * r, 2 * r + 1}, {2 * r + 1, 2 * r + 1}, {2 * r + 1, 2 * r - 1}, {2 * r + 2, 2 * r + 1}};
    const Exponent mY[4] = {{0, -2}, {-1, -2}, {0, 0}, {-1, -2}};
    const Exponent mZ[4] = {{0, 0}, {0, 0}, {-1, 0}, {-1, 0}};
    const GeoRatFun w = one_minus_pinv();
    for (std::size_t j = 0; j < 4; ++j) {
        GeoRatFun term = image(kTable2[j], mX[j], mY[j], mZ[j]);
        for (int k = 1; k < kTable2[j].n; ++k)
            term *= w;
        out.smooth_boundary += term;
    }
    out.smooth_boundary_closed = GeoRatFun(Rational(1), {2 * r, 2 * r - 1}, BivarPoly::one_minus(2 * r + 1, 2 * r + 1), {low, mid});
    out.line_boundary = GeoRatFun(Rational(1), {4 * r, 2 * r + 2}, BivarPoly(Integer(1)), {big});
    out.interior = mono(1, 0) * out.smooth_boundary * out.line_boundary;
    out.smpt_off = inv32 * inv21 + inv21 * (out.smooth_boundary + out.line_boundary) + out.interior;
    return out;
}

Thm11 thm11_A(int r) {
    auto pc = thm11_pieces(r);
    if (!geo_equal(pc.off_off, pc.off_off_closed))
        throw Error("thm11_A: off/off sum differs from its closed form");
    if (!geo_equal(pc.smooth_boundary, pc.smooth_boundary_closed))
        throw Error("thm11_A: smooth boundary sum differs from its closed form");
    Thm11 out{b32() * b21() * pc.off_off, b21() * (pc.smpt_off - pc.off_off)};
    auto closed = thm11_closed(r);
    if (!geo_equal(out.A1, closed.A1) || !geo_equal(out.A2, closed.A2))
        throw Error("thm11_A: assembled A_1, A_2 differ from the closed forms");
    return out;
}

// ------------------------------------------------------------------ display

std::string display_monomial(Exponent e) {
    std::string s;
    if (e.x == 1)
        s += "X";
    else if (e.x != 0)
        s += "X^" + exp_str(e.x);
    if (e.y == 1)
        s += "Y";
    else if (e.y != 0)
        s += "Y^" + exp_str(e.y);
    return s.empty() ? "1" : s;
}

std::string display_poly(const BivarPoly& p) {
    if (p.is_zero())
        return "0";
    std::vector<std::pair<Exponent, Integer>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return std::pair(a.first.y, a.first.x) < std::pair(b.first.y, b.first.x);
    });
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (c < 0)
            s += "-";
        else if (!first)
            s += "+";
        first = false;
        Integer a = abs(c);
        if (e == Exponent{})
            s += a.get_str();
        else
            s += (a == 1 ? "" : a.get_str()) + display_monomial(e);
    }
    return s;
}

std::string display_form(const GeoRatFun& f) {
    if (f.is_zero())
        return "0";
    std::string s;
    const Rational& c = f.scalar();
    BivarPoly top = f.numer().shifted(f.prefactor()) * c.get_num();
    s = "(" + display_poly(top) + ")";
    if (c.get_den() != 1)
        s = "1/" + c.get_den().get_str() + "*" + s;
    std::vector<Exponent> den = f.denom_list();
    if (den.empty())
        return s;
    std::sort(den.begin(), den.end(), [](Exponent a, Exponent b) { return std::pair(a.y, a.x) > std::pair(b.y, b.x); });
    std::string d;
    for (auto e : den)
        d += "(1-" + display_monomial(e) + ")";
    return s + "/" + (den.size() > 1 ? "(" + d + ")" : d);
}

GeoRatFun FactoredForm::value() const {
    GeoRatFun v = GeoRatFun::one();
    for (const auto& f : numer_factors)
        v *= GeoRatFun::polynomial(f);
    for (int i = 0; i <= zeta_top; ++i)
        v *= GeoRatFun::geometric(i, 1);
    for (auto e : denoms)
        v *= GeoRatFun::geometric(e.x, e.y);
    return v;
}

std::string FactoredForm::numerator_string() const {
    std::string s;
    for (const auto& f : numer_factors) {
        if (f.size() == 1 && f.terms().begin()->second == 1)
            s += display_monomial(f.terms().begin()->first);
        else
            s += "(" + display_poly(f) + ")";
    }
    return s.empty() ? "1" : s;
}

std::string FactoredForm::denominator_string() const {
    std::string s;
    if (zeta_top >= 0) {
        s += "\\prod_{i=0}^" + exp_str(zeta_top) + "(1-X^iY)";
        if (!denoms.empty())
            s += "\\cdot";
    }
    for (auto e : denoms)
        s += "(1-" + display_monomial(e) + ")";
    return s.empty() ? "1" : s;
}

namespace {

void sort_denoms(std::vector<Exponent>& d) {
    std::sort(d.begin(), d.end(), [](Exponent a, Exponent b) { return std::pair(a.y, a.x) > std::pair(b.y, b.x); });
}

} // namespace

Thm11Factored thm11_factored(int r) {
    check_r(r);
    const Exponent big{4 * r + 2, 2 * r + 2}, mid{2 * r + 2, 2 * r + 1}, low{2 * r + 1, 2 * r - 1};
    Thm11Factored out;
    out.A1.numer_factors = {a1_numer(r)};
    out.A1.denoms = {big, mid};
    out.A2.numer_factors = {BivarPoly::one_minus(0, 1), one_plus(0, 1), BivarPoly::monomial(Integer(1), 2 * r, 2 * r - 1),
                            one_plus(4 * r + 1, 2 * r + 2)};
    out.A2.denoms = {big, mid, low};
    sort_denoms(out.A1.denoms);
    sort_denoms(out.A2.denoms);
    return out;
}

WPair w_factored(int r) {
    auto a = thm11_factored(r);
    const int d = 2 * r;
    const int dp = 3;
    WPair out{a.A1, a.A2};
    for (FactoredForm* f : {&out.W1, &out.W2}) {
        f->zeta_top = d - 1;
        f->denoms.push_back({d * dp, d + dp});
        sort_denoms(f->denoms);
    }
    return out;
}

} // namespace nilzeta
