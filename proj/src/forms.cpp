#include "nilzeta/forms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "nilzeta/errors.hpp"

namespace nilzeta {

bool LinearForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t LinearForm::eval(const std::vector<std::int64_t>& y) const {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        s += coeffs[k] * y[k];
    return s;
}

LinearForm LinearForm::operator-() const {
    LinearForm r = *this;
    for (auto& c : r.coeffs)
        c = -c;
    return r;
}

LinearFormMatrix::LinearFormMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      e_(static_cast<std::size_t>(rows * cols), LinearForm{std::vector<std::int64_t>(static_cast<std::size_t>(nvars), 0)}) {}

bool LinearFormMatrix::is_antisymmetric() const {
    if (rows_ != cols_)
        return false;
    for (int i = 0; i < rows_; ++i) {
        if (!at(i, i).is_zero())
            return false;
        for (int j = i + 1; j < cols_; ++j)
            if (!(at(i, j) == -at(j, i)))
                return false;
    }
    return true;
}

LinearFormMatrix LinearFormMatrix::transposed() const {
    LinearFormMatrix t(cols_, rows_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

IntMatrix LinearFormMatrix::eval(const std::vector<Integer>& y) const {
    IntMatrix m(static_cast<std::size_t>(rows_), std::vector<Integer>(static_cast<std::size_t>(cols_), Integer(0)));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto& c = at(i, j).coeffs;
            Integer& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < nvars_; ++k)
                if (c[static_cast<std::size_t>(k)] != 0)
                    v += Integer(static_cast<long>(c[static_cast<std::size_t>(k)])) * y[static_cast<std::size_t>(k)];
        }
    return m;
}

namespace {

std::string form_string(const LinearForm& f) {
    std::string s;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        std::int64_t c = f.coeffs[k];
        if (c == 0)
            continue;
        std::string var = "y" + std::to_string(k + 1);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? "-" : "+";
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1)
            s += std::to_string(a) + "*";
        s += var;
    }
    return s.empty() ? "0" : s;
}

} // namespace

std::string LinearFormMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << form_string(at(i, j));
        os << "]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- MPoly

MPoly MPoly::constant(int nvars, const Integer& c) {
    MPoly p(nvars);
    p.add_term(Mono(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

MPoly MPoly::from_form(const LinearForm& f) {
    MPoly p(static_cast<int>(f.coeffs.size()));
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        Mono m(f.coeffs.size(), 0);
        m[k] = 1;
        p.add_term(m, Integer(static_cast<long>(f.coeffs[k])));
    }
    return p;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

void MPoly::add_term(const Mono& m, const Integer& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            MPoly::Mono m(ma.size());
            for (std::size_t k = 0; k < ma.size(); ++k)
                m[k] = ma[k] + mb[k];
            r.add_term(m, ca * cb);
        }
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        int e = m[static_cast<std::size_t>(var)];
        if (e == 0)
            continue;
        Mono n = m;
        --n[static_cast<std::size_t>(var)];
        r.add_term(n, c * e);
    }
    return r;
}

Integer MPoly::eval(const std::vector<Integer>& y) const {
    Integer s(0);
    for (const auto& [m, c] : terms_) {
        Integer t = c;
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e)
                t *= y[k];
        s += t;
    }
    return s;
}

std::int64_t MPoly::eval_mod(const std::vector<std::int64_t>& y, std::int64_t p) const {
    __int128 s = 0;
    for (const auto& [m, c] : terms_) {
        Integer cr;
        mpz_fdiv_r_ui(cr.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        __int128 t = cr.get_si();
        for (std::size_t k = 0; k < m.size(); ++k)
            for (int e = 0; e < m[k]; ++e)
                t = t * (((y[k] % p) + p) % p) % p;
        s = (s + t) % p;
    }
    return static_cast<std::int64_t>(s);
}

std::string MPoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::string s;
    // highest degree terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += "y" + std::to_string(k + 1);
            if (m[k] > 1)
                mono += "^" + std::to_string(m[k]);
        }
        Integer a = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (mono.empty())
            s += a.get_str();
        else if (a == 1)
            s += mono;
        else
            s += a.get_str() + "*" + mono;
    }
    return s;
}

MPoly symbolic_det(const LinearFormMatrix& m) {
    if (m.rows() != m.cols())
        throw BadParams("symbolic_det: matrix is not square");
    int n = m.rows();
    int nv = m.nvars();
    if (n == 0)
        return MPoly::constant(nv, Integer(1));
    // Laplace expansion along rows, memoized on the set of used columns.
    std::unordered_map<std::uint64_t, MPoly> memo;
    std::function<MPoly(int, std::uint64_t)> rec = [&](int row, std::uint64_t used) -> MPoly {
        if (row == n)
            return MPoly::constant(nv, Integer(1));
        if (auto it = memo.find(used); it != memo.end())
            return it->second;
        MPoly acc(nv);
        int sign = 1;
        for (int c = 0; c < n; ++c) {
            if (used & (std::uint64_t(1) << c))
                continue;
            const LinearForm& f = m.at(row, c);
            if (!f.is_zero()) {
                MPoly term = MPoly::from_form(f) * rec(row + 1, used | (std::uint64_t(1) << c));
                if (sign > 0)
                    acc += term;
                else
                    acc -= term;
            }
            sign = -sign; // alternates over the remaining columns only
        }
        memo.emplace(used, acc);
        return acc;
    };
    return rec(0, 0);
}

} // namespace nilzeta
