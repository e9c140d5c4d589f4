#include "nilzeta/intlat.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "nilzeta/errors.hpp"

namespace nilzeta {

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    IntMatrix c(rows, std::vector<Integer>(cols, Integer(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Integer determinant(IntMatrix m) {
    // Bareiss fraction-free elimination.
    std::size_t n = m.size();
    if (n == 0)
        return Integer(1);
    Integer sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return Integer(0);
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------- HNF

Integer LatticeHNF::index() const {
    Integer r(1);
    for (int i = 0; i < n; ++i)
        r *= Integer(static_cast<long>(at(i, i)));
    return r;
}

IntMatrix LatticeHNF::to_matrix() const {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = Integer(static_cast<long>(at(i, j)));
    return m;
}

LatticeHNF hnf_from_rows(const IntMatrix& rows) {
    if (rows.empty())
        throw BadParams("hnf_from_rows: empty matrix");
    std::size_t n = rows[0].size();
    IntMatrix a = rows;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
        // gcd-combine column c into row r
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            if (best == a.size())
                throw BadParams("hnf_from_rows: rows do not span a full-rank lattice");
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (std::size_t j = c; j < n; ++j)
                    a[i][j] -= q * a[r][j];
                if (a[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (a[r][c] < 0)
            for (std::size_t j = c; j < n; ++j)
                a[r][j] = -a[r][j];
        ++r;
    }
    // reduce entries above the diagonal
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < c; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[c][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < n; ++j)
                    a[i][j] -= q * a[c][j];
        }
    LatticeHNF L;
    L.n = static_cast<int>(n);
    L.h.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!a[i][j].fits_slong_p())
                throw BadParams("hnf_from_rows: entry exceeds 64-bit range");
            L.h[i * n + j] = a[i][j].get_si();
        }
    return L;
}

std::vector<std::vector<int>> diagonal_types(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, left - e);
        }
    };
    if (n == 0) {
        if (k == 0)
            out.emplace_back();
        return out;
    }
    rec(0, k);
    return out;
}

void for_each_hnf_with_diagonal(int p, const std::vector<int>& exps, const std::function<void(const LatticeHNF&)>& visit) {
    int n = static_cast<int>(exps.size());
    LatticeHNF L;
    L.n = n;
    L.h.assign(static_cast<std::size_t>(n * n), 0);
    std::vector<std::int64_t> diag(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::int64_t v = 1;
        for (int e = 0; e < exps[static_cast<std::size_t>(i)]; ++e)
            v *= p;
        diag[static_cast<std::size_t>(i)] = v;
        L.at(i, i) = v;
    }
    // free positions (i, j), j > i, in row-major order; the last one varies fastest
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (diag[static_cast<std::size_t>(j)] > 1)
                slots.emplace_back(i, j);
    for (;;) {
        visit(L);
        int s = static_cast<int>(slots.size()) - 1;
        for (; s >= 0; --s) {
            auto [i, j] = slots[static_cast<std::size_t>(s)];
            if (++L.at(i, j) < diag[static_cast<std::size_t>(j)])
                break;
            L.at(i, j) = 0;
        }
        if (s < 0)
            return;
    }
}

void for_each_hnf(int n, int p, int k, const std::function<void(const LatticeHNF&)>& visit) {
    for (const auto& t : diagonal_types(n, k))
        for_each_hnf_with_diagonal(p, t, visit);
}

std::vector<LatticeHNF> enumerate_hnf(int n, int p, int k) {
    std::vector<LatticeHNF> out;
    for_each_hnf(n, p, k, [&out](const LatticeHNF& L) { out.push_back(L); });
    return out;
}

bool is_maximal(const LatticeHNF& L, int p) {
    return std::any_of(L.h.begin(), L.h.end(), [p](std::int64_t v) { return v % p != 0; });
}

std::vector<LatticeHNF> enumerate_maximal_hnf(int n, int p, int k) {
    std::vector<LatticeHNF> out;
    for_each_hnf(n, p, k, [&out, p](const LatticeHNF& L) {
        if (is_maximal(L, p))
            out.push_back(L);
    });
    return out;
}

Integer count_hnf(int n, const Integer& p, int k) {
    // coefficient of T^k in prod_{i<n} 1/(1 - p^i T)
    std::vector<Integer> c(static_cast<std::size_t>(k) + 1, Integer(0));
    c[0] = 1;
    Integer pi(1);
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= k; ++j)
            c[static_cast<std::size_t>(j)] += pi * c[static_cast<std::size_t>(j - 1)];
        pi *= p;
    }
    return c[static_cast<std::size_t>(k)];
}

bool member(const LatticeHNF& L, const std::vector<std::int64_t>& v) {
    if (static_cast<int>(v.size()) != L.n)
        throw BadParams("member: dimension mismatch");
    std::vector<std::int64_t> w = v;
    for (int j = 0; j < L.n; ++j) {
        std::int64_t d = L.at(j, j);
        if (w[static_cast<std::size_t>(j)] % d != 0)
            return false;
        std::int64_t c = w[static_cast<std::size_t>(j)] / d;
        if (c != 0)
            for (int t = j; t < L.n; ++t)
                w[static_cast<std::size_t>(t)] -= c * L.at(j, t);
    }
    return true;
}

// ---------------------------------------------------------------- SNF

SnfResult smith(const IntMatrix& m) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    IntMatrix a = m;
    IntMatrix U = identity_matrix(rows);
    IntMatrix W = identity_matrix(cols);

    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) { // row dst -= q * row src
        for (std::size_t j = 0; j < cols; ++j)
            a[dst][j] -= q * a[src][j];
        for (std::size_t j = 0; j < rows; ++j)
            U[dst][j] -= q * U[src][j];
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) { // col dst -= q * col src
        for (std::size_t i = 0; i < rows; ++i)
            a[i][dst] -= q * a[i][src];
        for (std::size_t i = 0; i < cols; ++i)
            W[i][dst] -= q * W[i][src];
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(U[i], U[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : a)
            std::swap(r[i], r[j]);
        for (auto& r : W)
            std::swap(r[i], r[j]);
    };

    std::size_t lim = std::min(rows, cols);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // pivot: smallest nonzero absolute value in the trailing block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                goto finished;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                    row_op(i, t, q);
                    if (a[i][t] != 0)
                        clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                    col_op(j, t, q);
                    if (a[t][j] != 0)
                        clean = false;
                }
            if (!clean)
                continue;
            // divisibility of the trailing block by the pivot
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            row_op(t, bad, Integer(-1));
        }
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < rows; ++j)
                U[t][j] = -U[t][j];
        }
    }
finished:
    SnfResult res;
    for (std::size_t t = 0; t < lim; ++t)
        res.divisors.push_back(a[t][t]);
    res.left = std::move(U);
    res.right = std::move(W);
    return res;
}

std::vector<int> elementary_type(const LatticeHNF& L, int p) {
    auto snf = smith(L.to_matrix());
    std::vector<int> out;
    for (const auto& d : snf.divisors) {
        Integer v = d;
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (v != 1)
            throw BadParams("elementary_type: index is not a power of p");
        out.push_back(e);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

namespace {

using i128 = __int128;

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, b = a % m;
    if (b < 0)
        b += m;
    std::int64_t r = b;
    while (r != 0) {
        std::int64_t q = g / r;
        std::tie(g, r) = std::pair(r, g - q * r);
        std::tie(x, x1) = std::pair(x1, x - q * x1);
    }
    // g == 1 since a is a unit
    x %= m;
    return x < 0 ? x + m : x;
}

} // namespace

std::vector<int> padic_divisor_valuations(const IntMatrix& m, int p, int cap) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::size_t lim = std::min(rows, cols);
    if (cap <= 0)
        return std::vector<int>(lim, 0);
    std::int64_t q = 1;
    for (int i = 0; i < cap; ++i) {
        if (q > (std::int64_t(1) << 61) / p)
            throw BadParams("padic_divisor_valuations: p^cap exceeds 64-bit range");
        q *= p;
    }
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Integer r;
            mpz_fdiv_r_ui(r.get_mpz_t(), m[i][j].get_mpz_t(), static_cast<unsigned long>(q));
            a[i][j] = r.get_si();
        }
    auto val = [p, cap](std::int64_t x) {
        if (x == 0)
            return cap;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    std::vector<int> out;
    for (std::size_t t = 0; t < lim; ++t) {
        std::size_t pi = rows, pj = cols;
        int best = cap;
        for (std::size_t i = t; i < rows && best > 0; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                int v = val(a[i][j]);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (v == 0)
                        break;
                }
            }
        if (pi == rows) {
            out.resize(lim, cap);
            break;
        }
        out.push_back(best);
        std::swap(a[t], a[pi]);
        for (auto& r : a)
            std::swap(r[t], r[pj]);
        std::int64_t pv = 1;
        for (int i = 0; i < best; ++i)
            pv *= p;
        std::int64_t inv = mod_inverse(a[t][t] / pv, q);
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0)
                continue;
            std::int64_t f = static_cast<std::int64_t>(static_cast<i128>(a[i][t] / pv) * inv % q);
            for (std::size_t j = t; j < cols; ++j) {
                i128 v = (static_cast<i128>(a[i][j]) - static_cast<i128>(f) * a[t][j]) % q;
                a[i][j] = static_cast<std::int64_t>(v < 0 ? v + q : v);
            }
        }
        // columns need no update: later pivots only see rows and columns > t,
        // and clearing row t by column operations leaves them unchanged.
    }
    return out;
}

} // namespace nilzeta
