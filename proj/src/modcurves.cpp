#include "nilzeta/modcurves.hpp"

#include <algorithm>

#include "nilzeta/errors.hpp"

namespace nilzeta {

IntPoly::IntPoly(std::vector<Integer> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_ints(const std::vector<long>& coeffs) {
    std::vector<Integer> v;
    for (long x : coeffs)
        v.emplace_back(x);
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

Integer IntPoly::eval(const Integer& x) const {
    Integer s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        s = s * x + *it;
    return s;
}

std::int64_t IntPoly::eval_mod(std::int64_t x, std::int64_t p) const {
    __int128 s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), it->get_mpz_t(), static_cast<unsigned long>(p));
        s = (s * x + r.get_si()) % p;
    }
    return static_cast<std::int64_t>(s);
}

IntPoly IntPoly::derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.c.empty() || b.c.empty())
        return IntPoly();
    std::vector<Integer> r(a.c.size() + b.c.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(r));
}

std::string IntPoly::to_string(const char* var) const {
    if (c.empty())
        return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Integer& v = c[static_cast<std::size_t>(i)];
        if (v == 0)
            continue;
        Integer a = abs(v);
        std::string mono = i == 0 ? "" : (i == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(i));
        if (s.empty())
            s += v < 0 ? "-" : "";
        else
            s += v < 0 ? " - " : " + ";
        if (mono.empty())
            s += a.get_str();
        else if (a == 1)
            s += mono;
        else
            s += a.get_str() + "*" + mono;
    }
    return s;
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0)
        return Integer(0);
    if (m == 0 && n == 0)
        return Integer(1);
    std::size_t size = static_cast<std::size_t>(m + n);
    IntMatrix s(size, std::vector<Integer>(size, Integer(0)));
    // Sylvester matrix with descending coefficients
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = f.c[static_cast<std::size_t>(m - k)];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = g.c[static_cast<std::size_t>(n - k)];
    return determinant(std::move(s));
}

Integer discriminant(const IntPoly& f) {
    int n = f.degree();
    if (n < 1)
        throw BadParams("discriminant of a constant polynomial");
    if (n == 1)
        return Integer(1);
    Integer r = resultant(f, f.derivative());
    Integer d = r / f.lead();
    if ((n * (n - 1) / 2) % 2 != 0)
        d = -d;
    return d;
}

std::set<P1Point> roots_P1(const IntPoly& f, std::int64_t p) {
    std::set<P1Point> out;
    for (std::int64_t x = 0; x < p; ++x)
        if (f.eval_mod(x, p) == 0)
            out.insert({x, 1});
    if (f.degree() >= 0) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), f.lead().get_mpz_t(), static_cast<unsigned long>(p));
        if (r == 0)
            out.insert({1, 0});
    }
    return out;
}

int n_fp(const IntPoly& f, std::int64_t p) {
    if (f.degree() >= 1 && discriminant(f) % p == 0)
        throw RamifiedPrime("p = " + std::to_string(p) + " divides the discriminant of " + f.to_string());
    int n = 0;
    for (std::int64_t x = 0; x < p; ++x)
        if (f.eval_mod(x, p) == 0)
            ++n;
    return n;
}

std::map<std::vector<int>, std::int64_t> c_pI(const std::vector<IntPoly>& F, std::int64_t p) {
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i].lead() % p == 0)
            throw BadPrime("p = " + std::to_string(p) + " divides the leading coefficient of " + F[i].to_string());
        if (F[i].degree() >= 2 && discriminant(F[i]) % p == 0)
            throw BadPrime("p = " + std::to_string(p) + " is ramified for " + F[i].to_string());
        for (std::size_t j = i + 1; j < F.size(); ++j)
            if (resultant(F[i], F[j]) % p == 0)
                throw BadPrime("p = " + std::to_string(p) + " divides res(" + F[i].to_string() + ", " + F[j].to_string() + ")");
    }
    std::map<std::vector<int>, std::int64_t> out;
    auto tally = [&](const P1Point& pt) {
        std::vector<int> I;
        for (std::size_t i = 0; i < F.size(); ++i) {
            bool zero = pt.b == 0 ? F[i].lead() % p == 0 : F[i].eval_mod(pt.a, p) == 0;
            if (zero)
                I.push_back(static_cast<int>(i) + 1);
        }
        ++out[I];
    };
    for (std::int64_t x = 0; x < p; ++x)
        tally({x, 1});
    tally({1, 0});
    return out;
}

// ---------------------------------------------------------------- curves

CurveSpec::CurveSpec(LinearFormMatrix r) : R(std::move(r)) {
    if (R.rows() != R.cols() || R.nvars() != 3)
        throw BadParams("curve matrix must be square in three variables");
    if (R.rows() < 2)
        throw BadParams("curve matrix must have size r >= 2");
    det_ = symbolic_det(R);
}

std::vector<std::vector<std::int64_t>> projective_points(int dim, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> out;
    int n = dim + 1;
    for (int last = 0; last < n; ++last) {
        // coordinates after `last` are zero, coordinate `last` is 1, earlier ones free
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(last)] = 1;
        for (;;) {
            out.push_back(v);
            int k = last - 1;
            for (; k >= 0; --k) {
                if (++v[static_cast<std::size_t>(k)] < p)
                    break;
                v[static_cast<std::size_t>(k)] = 0;
            }
            if (k < 0)
                break;
        }
    }
    return out;
}

std::int64_t count_points_P2(const CurveSpec& cs, std::int64_t p) {
    std::int64_t n = 0;
    for (const auto& y : projective_points(2, p))
        if (cs.det().eval_mod(y, p) == 0)
            ++n;
    return n;
}

bool is_smooth_mod_p(const CurveSpec& cs, std::int64_t p) {
    std::vector<MPoly> partials;
    for (int k = 0; k < 3; ++k)
        partials.push_back(cs.det().derivative(k));
    for (const auto& y : projective_points(2, p)) {
        if (cs.det().eval_mod(y, p) != 0)
            continue;
        if (std::all_of(partials.begin(), partials.end(), [&](const MPoly& d) { return d.eval_mod(y, p) == 0; }))
            return false;
    }
    return true;
}

bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::set<std::int64_t> prime_divisors(Integer n) {
    if (n == 0)
        throw BadParams("prime_divisors of zero");
    n = abs(n);
    std::set<std::int64_t> out;
    for (std::int64_t d = 2; d <= 1000000 && Integer(d) * d <= n; ++d)
        if (n % d == 0) {
            out.insert(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1) {
        if (!n.fits_slong_p() || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw Error("prime_divisors: cofactor " + n.get_str() + " not factored");
        out.insert(n.get_si());
    }
    return out;
}

} // namespace nilzeta
