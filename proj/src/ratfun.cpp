#include "nilzeta/ratfun.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "nilzeta/errors.hpp"

namespace nilzeta {

namespace {

std::string monomial_string(int x, int y, const char* xs = "X", const char* ys = "Y") {
    std::string s;
    auto var = [&s](const char* v, int e) {
        if (e == 0)
            return;
        if (!s.empty())
            s += '*';
        s += v;
        if (e != 1)
            s += '^' + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    };
    var(xs, x);
    var(ys, y);
    return s;
}

bool orientation_negative(Exponent e) { return e.y < 0 || (e.y == 0 && e.x < 0); }

Rational rpow(const Rational& base, int e) {
    if (e == 0)
        return Rational(1);
    if (base == 0) {
        if (e < 0)
            throw PoleError("negative power of zero");
        return Rational(0);
    }
    Rational r(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    for (int i = 0, n = e > 0 ? e : -e; i < n; ++i)
        r *= b;
    return r;
}

// Multiply q in place by (1 - X^a Y^b)^k.
void mul_one_minus(BivarPoly& q, Exponent e, int k) {
    for (int i = 0; i < k; ++i)
        q -= q.shifted(e);
}

} // namespace

// ---------------------------------------------------------------- BivarPoly

BivarPoly::BivarPoly(const Integer& constant) {
    if (constant != 0)
        terms_.emplace(Exponent{0, 0}, constant);
}

BivarPoly BivarPoly::monomial(const Integer& c, int x, int y) {
    BivarPoly p;
    p.add_term({x, y}, c);
    return p;
}

BivarPoly BivarPoly::one_minus(int a, int b) {
    BivarPoly p(Integer(1));
    p.add_term({a, b}, Integer(-1));
    return p;
}

BivarPoly BivarPoly::from_terms(const std::vector<std::pair<Exponent, Integer>>& terms) {
    BivarPoly p;
    for (const auto& [e, c] : terms)
        p.add_term(e, c);
    return p;
}

Integer BivarPoly::coeff(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
}

Exponent BivarPoly::min_exponent() const {
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        m.x = std::min(m.x, e.x);
        m.y = std::min(m.y, e.y);
    }
    return m;
}

Exponent BivarPoly::max_exponent() const {
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        m.x = std::max(m.x, e.x);
        m.y = std::max(m.y, e.y);
    }
    return m;
}

Integer BivarPoly::content() const {
    Integer g(0);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void BivarPoly::add_term(Exponent e, const Integer& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

BivarPoly& BivarPoly::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& o) { return *this = *this * o; }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    Integer t;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            mpz_mul(t.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            r.add_term(ea + eb, t);
        }
    return r;
}

BivarPoly& BivarPoly::divide_exact(const Integer& c) {
    for (auto& [e, v] : terms_)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    return *this;
}

BivarPoly BivarPoly::shifted(Exponent s) const {
    BivarPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), e + s, c);
    return r;
}

BivarPoly BivarPoly::reflected() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(-e, c);
    return r;
}

BivarPoly BivarPoly::pow(unsigned k) const {
    BivarPoly r(Integer(1));
    for (unsigned i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

std::string BivarPoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exponent, Integer>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
        return std::pair(l.first.y, l.first.x) < std::pair(r.first.y, r.first.x);
    });
    std::string s;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        Integer mag = abs(c);
        std::string mono = monomial_string(e.x, e.y);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (mono.empty())
            s += mag.get_str();
        else if (mag == 1)
            s += mono;
        else
            s += mag.get_str() + "*" + mono;
    }
    return s;
}

// ---------------------------------------------------------------- SeriesInT

std::vector<Rational> SeriesInT::at_rational(const Rational& x) const {
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        Rational v(0);
        for (const auto& [e, k] : c)
            v += Rational(k) * rpow(x, e);
        out.push_back(v);
    }
    return out;
}

std::vector<Integer> SeriesInT::at(const Integer& x) const {
    std::vector<Integer> out;
    for (const auto& v : at_rational(Rational(x))) {
        if (v.get_den() != 1)
            throw NonIntegral("series coefficient " + v.get_str() + " is not an integer at X=" + x.get_str());
        out.push_back(v.get_num());
    }
    return out;
}

bool SeriesInT::is_polynomial_in_x() const {
    for (const auto& c : coeffs)
        if (!c.empty() && c.begin()->first < 0)
            return false;
    return true;
}

std::string format_laurent(const LaurentX& p, const char* var) {
    if (p.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : p) {
        Integer mag = abs(c);
        std::string mono = e == 0 ? "" : (e == 1 ? std::string(var) : std::string(var) + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e)));
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (mono.empty())
            s += mag.get_str();
        else if (mag == 1)
            s += mono;
        else
            s += mag.get_str() + "*" + mono;
    }
    return s;
}

// ---------------------------------------------------------------- GeoRatFun

GeoRatFun::GeoRatFun(const Rational& c) : scalar_(c), numer_(Integer(1)) { normalize(); }

GeoRatFun::GeoRatFun(const Rational& scalar, Exponent prefactor, BivarPoly numer, const std::vector<Exponent>& denom)
    : scalar_(scalar), prefactor_(prefactor), numer_(std::move(numer)) {
    for (const auto& e : denom)
        push_denominator(e, 1);
    normalize();
}

GeoRatFun GeoRatFun::monomial(const Rational& c, int x, int y) { return GeoRatFun(c, {x, y}, BivarPoly(Integer(1)), {}); }

GeoRatFun GeoRatFun::geometric(int a, int b) { return GeoRatFun(Rational(1), {}, BivarPoly(Integer(1)), {{a, b}}); }

GeoRatFun GeoRatFun::polynomial(const BivarPoly& p) { return GeoRatFun(Rational(1), {}, p, {}); }

GeoRatFun GeoRatFun::inverse_x_repunit(int k) {
    if (k < 1)
        throw BadParams("repunit length must be positive");
    if (k == 1)
        return one();
    return GeoRatFun(Rational(1), {}, BivarPoly::one_minus(1, 0), {{k, 0}});
}

std::vector<Exponent> GeoRatFun::denom_list() const {
    std::vector<Exponent> out;
    for (const auto& [e, k] : denom_)
        for (int i = 0; i < k; ++i)
            out.push_back(e);
    return out;
}

void GeoRatFun::push_denominator(Exponent e, int mult) {
    if (e.x == 0 && e.y == 0)
        throw PoleError("denominator factor (1 - X^0 Y^0) vanishes identically");
    if (orientation_negative(e)) {
        // 1/(1 - m) = -m^-1 / (1 - m^-1)
        if (mult % 2 != 0)
            scalar_ = -scalar_;
        prefactor_ = prefactor_ + Exponent{-e.x * mult, -e.y * mult};
        e = -e;
    }
    denom_[e] += mult;
}

void GeoRatFun::normalize() {
    if (scalar_ == 0 || numer_.is_zero()) {
        scalar_ = 0;
        prefactor_ = {};
        numer_ = BivarPoly();
        denom_.clear();
        return;
    }
    scalar_.canonicalize();
    Integer c = numer_.content();
    if (numer_.terms().rbegin()->second < 0)
        c = -c;
    if (c != 1) {
        numer_.divide_exact(c);
        scalar_ *= Rational(c);
    }
    Exponent m = numer_.min_exponent();
    if (m.x != 0 || m.y != 0) {
        numer_ = numer_.shifted(-m);
        prefactor_ = prefactor_ + m;
    }
}

BivarPoly GeoRatFun::numerator_over(const DenomMap& common, Rational& scalar_out) const {
    BivarPoly q = numer_.shifted(prefactor_);
    for (const auto& [e, k] : common) {
        auto it = denom_.find(e);
        int have = it == denom_.end() ? 0 : it->second;
        if (have > k)
            throw Error("numerator_over: common denominator does not contain this denominator");
        mul_one_minus(q, e, k - have);
    }
    scalar_out = scalar_;
    return q;
}

namespace {

GeoRatFun::DenomMap union_max(const GeoRatFun::DenomMap& a, const GeoRatFun::DenomMap& b) {
    GeoRatFun::DenomMap r = a;
    for (const auto& [e, k] : b) {
        int& v = r[e];
        v = std::max(v, k);
    }
    return r;
}

} // namespace

GeoRatFun& GeoRatFun::operator+=(const GeoRatFun& o) {
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    DenomMap common = union_max(denom_, o.denom_);
    Rational sf, sg;
    BivarPoly qf = numerator_over(common, sf);
    BivarPoly qg = o.numerator_over(common, sg);
    Integer l;
    mpz_lcm(l.get_mpz_t(), sf.get_den_mpz_t(), sg.get_den_mpz_t());
    Integer mf = sf.get_num() * (l / sf.get_den());
    Integer mg = sg.get_num() * (l / sg.get_den());
    qf *= mf;
    qg *= mg;
    qf += qg;
    scalar_ = Rational(Integer(1), l);
    prefactor_ = {};
    numer_ = std::move(qf);
    denom_ = std::move(common);
    normalize();
    return *this;
}

GeoRatFun& GeoRatFun::operator-=(const GeoRatFun& o) { return *this += -o; }

GeoRatFun GeoRatFun::operator-() const {
    GeoRatFun r = *this;
    r.scalar_ = -r.scalar_;
    return r;
}

GeoRatFun& GeoRatFun::operator*=(const Rational& c) {
    scalar_ *= c;
    normalize();
    return *this;
}

GeoRatFun& GeoRatFun::operator*=(const GeoRatFun& o) {
    if (is_zero() || o.is_zero())
        return *this = GeoRatFun();
    scalar_ *= o.scalar_;
    prefactor_ = prefactor_ + o.prefactor_;
    numer_ = numer_ * o.numer_;
    for (const auto& [e, k] : o.denom_)
        denom_[e] += k;
    normalize();
    return *this;
}

std::string GeoRatFun::to_string() const {
    if (is_zero())
        return "0";
    std::string s;
    BivarPoly top = numer_.shifted(prefactor_);
    bool scalar_int = scalar_.get_den() == 1;
    if (scalar_int) {
        top *= scalar_.get_num();
        s = "(" + top.to_string() + ")";
    } else {
        s = scalar_.get_str() + "*(" + top.to_string() + ")";
    }
    if (!denom_.empty()) {
        s += "/(";
        bool first = true;
        for (const auto& [e, k] : denom_) {
            if (!first)
                s += "*";
            first = false;
            s += "(1 - " + monomial_string(e.x, e.y) + ")";
            if (k > 1)
                s += "^" + std::to_string(k);
        }
        s += ")";
    }
    return s;
}

// ---------------------------------------------------------------- operations

GeoRatFun geo_add(const GeoRatFun& f, const GeoRatFun& g) { return f + g; }

GeoRatFun geo_mul(const GeoRatFun& f, const GeoRatFun& g) { return f * g; }

bool geo_equal(const GeoRatFun& f, const GeoRatFun& g) {
    if (f.is_zero() || g.is_zero())
        return f.is_zero() && g.is_zero();
    auto common = union_max(f.denom(), g.denom());
    Rational sf, sg;
    BivarPoly qf = f.numerator_over(common, sf);
    BivarPoly qg = g.numerator_over(common, sg);
    qf *= Integer(sf.get_num() * sg.get_den());
    qg *= Integer(sg.get_num() * sf.get_den());
    return qf == qg;
}

GeoRatFun invert_vars(const GeoRatFun& f) {
    if (f.is_zero())
        return f;
    Rational scalar = f.scalar();
    Exponent pre = -f.prefactor();
    std::vector<Exponent> den;
    for (const auto& [e, k] : f.denom()) {
        // 1/(1 - m^-1) = -m / (1 - m)
        if (k % 2 != 0)
            scalar = -scalar;
        pre = pre + Exponent{e.x * k, e.y * k};
        for (int i = 0; i < k; ++i)
            den.push_back(e);
    }
    return GeoRatFun(scalar, pre, f.numer().reflected(), den);
}

GeoRatFun substitute(const GeoRatFun& f, Exponent x_to, Exponent y_to) {
    if (f.is_zero())
        return f;
    auto image = [&](Exponent e) { return Exponent{e.x * x_to.x + e.y * y_to.x, e.x * x_to.y + e.y * y_to.y}; };
    BivarPoly numer;
    for (const auto& [e, c] : f.numer().terms())
        numer.add_term(image(e), c);
    std::vector<Exponent> den;
    for (const auto& e : f.denom_list())
        den.push_back(image(e));
    return GeoRatFun(f.scalar(), image(f.prefactor()), std::move(numer), den);
}

std::optional<FunctionalEquation> check_functional_equation(const GeoRatFun& f) {
    if (f.is_zero())
        return std::nullopt;
    GeoRatFun g = invert_vars(f);
    if (g.denom() != f.denom() || !(g.numer() == f.numer()))
        return std::nullopt;
    Rational ratio = g.scalar() / f.scalar();
    if (ratio != 1 && ratio != -1)
        return std::nullopt;
    Exponent shift = g.prefactor() - f.prefactor();
    FunctionalEquation fe{ratio > 0 ? 1 : -1, shift.x, shift.y};
    if (!geo_equal(g, f * GeoRatFun::monomial(Rational(fe.sign), fe.a, fe.b)))
        return std::nullopt;
    return fe;
}

SeriesInT series_in_T(const GeoRatFun& f, int order) {
    if (order < 0)
        throw BadParams("series order must be nonnegative");
    SeriesInT out;
    out.order = order;
    out.coeffs.assign(static_cast<std::size_t>(order) + 1, LaurentX{});
    if (f.is_zero())
        return out;

    // Group numerator by Y degree: rows[y] is a Laurent polynomial in X.
    std::map<int, LaurentX> rows;
    for (const auto& [e, c] : f.numer().terms())
        rows[e.y + f.prefactor().y][e.x + f.prefactor().x] = c;

    for (const auto& [e, k] : f.denom()) {
        if (e.y != 0)
            continue;
        // Exact division by (1 - X^a)^k, row by row: q_j = n_j + q_{j-a}.
        for (int rep = 0; rep < k; ++rep) {
            for (auto& [y, row] : rows) {
                if (row.empty())
                    continue;
                int lo = row.begin()->first;
                int hi = row.rbegin()->first;
                LaurentX q;
                for (int j = lo; j <= hi; ++j) {
                    Integer v(0);
                    if (auto it = row.find(j); it != row.end())
                        v = it->second;
                    if (auto it = q.find(j - e.x); it != q.end())
                        v += it->second;
                    if (v != 0)
                        q[j] = v;
                }
                // q must vanish above hi - a
                for (auto it = q.upper_bound(hi - e.x); it != q.end(); ++it)
                    if (it->second != 0)
                        throw NotExpandable("denominator factor (1 - X^" + std::to_string(e.x) +
                                            ") does not divide the numerator; not expandable in Y");
                q.erase(q.upper_bound(hi - e.x), q.end());
                row = std::move(q);
            }
        }
    }

    std::vector<LaurentX> acc(static_cast<std::size_t>(order) + 1);
    for (auto& [y, row] : rows) {
        if (row.empty())
            continue;
        if (y < 0)
            throw NotExpandable("negative power of Y in the numerator");
        if (y <= order)
            acc[static_cast<std::size_t>(y)] = std::move(row);
    }

    for (const auto& [e, k] : f.denom()) {
        if (e.y == 0)
            continue;
        for (int rep = 0; rep < k; ++rep)
            for (int y = e.y; y <= order; ++y) {
                const auto& src = acc[static_cast<std::size_t>(y - e.y)];
                auto& dst = acc[static_cast<std::size_t>(y)];
                for (const auto& [x, c] : src) {
                    Integer& v = dst[x + e.x];
                    v += c;
                }
                std::erase_if(dst, [](const auto& kv) { return kv.second == 0; });
            }
    }

    const Rational& s = f.scalar();
    for (std::size_t y = 0; y < acc.size(); ++y) {
        LaurentX row;
        for (const auto& [x, c] : acc[y]) {
            Rational v = Rational(c) * s;
            if (v.get_den() != 1)
                throw NonIntegral("non-integral series coefficient at Y^" + std::to_string(y));
            if (v != 0)
                row[x] = v.get_num();
        }
        out.coeffs[y] = std::move(row);
    }
    return out;
}

Rational eval_at(const GeoRatFun& f, const Rational& x, const Rational& y) {
    if (f.is_zero())
        return Rational(0);
    Rational den(1);
    for (const auto& [e, k] : f.denom()) {
        Rational v = Rational(1) - rpow(x, e.x) * rpow(y, e.y);
        if (v == 0)
            throw PoleError("denominator factor (1 - " + monomial_string(e.x, e.y) + ") vanishes at the given point");
        for (int i = 0; i < k; ++i)
            den *= v;
    }
    Rational num(0);
    for (const auto& [e, c] : f.numer().terms())
        num += Rational(c) * rpow(x, e.x) * rpow(y, e.y);
    return f.scalar() * rpow(x, f.prefactor().x) * rpow(y, f.prefactor().y) * num / den;
}

} // namespace nilzeta
