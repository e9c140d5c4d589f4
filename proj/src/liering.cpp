#include "nilzeta/liering.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "nilzeta/errors.hpp"
#include "parallel.hpp"

namespace nilzeta {

namespace {

LinearFormMatrix hyperbolic(const LinearFormMatrix& B) {
    int a = B.rows(), b = B.cols();
    LinearFormMatrix M(a + b, a + b, B.nvars());
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            M.at(i, a + j) = B.at(i, j);
            M.at(a + j, i) = -B.at(i, j);
        }
    return M;
}

} // namespace

std::string Presentation::describe() const {
    std::ostringstream os;
    os << "d=" << d << " d'=" << dprime;
    if (has_blocks()) {
        os << " blocks:";
        for (const auto& b : blocks) {
            if (b.kind == BlockInfo::Kind::Odd)
                os << " odd(r=" << b.r << ")";
            else
                os << " even(f=" << b.f.to_string() << ", e=" << b.e << ")";
        }
    } else if (R) {
        os << " R-form r=" << R->rows();
    }
    return os.str();
}

Presentation block_odd(int r) {
    if (r < 1)
        throw BadParams("odd block needs r >= 1");
    LinearFormMatrix B(r + 1, r, 2);
    for (int i = 0; i < r; ++i) {
        B.set(i, i, 1, 1);     // y2 on the diagonal
        B.set(i + 1, i, 0, 1); // y1 below it
    }
    Presentation P;
    P.d = 2 * r + 1;
    P.dprime = 2;
    P.M = hyperbolic(B);
    BlockInfo info;
    info.kind = BlockInfo::Kind::Odd;
    info.r = r;
    P.blocks.push_back(info);
    return P;
}

std::pair<IntPoly, int> primary_decomposition(const IntPoly& g) {
    int r = g.degree();
    if (r < 1 || g.lead() != 1)
        throw BadParams("primary_decomposition expects a monic polynomial of positive degree");
    for (int e = r; e >= 1; --e) {
        if (r % e != 0)
            continue;
        int m = r / e;
        // determine f = t^m + b_1 t^(m-1) + ... top-down from the coefficients of g
        std::vector<Integer> fc(static_cast<std::size_t>(m) + 1, Integer(0));
        fc[static_cast<std::size_t>(m)] = 1;
        bool ok = true;
        for (int k = 1; k <= m && ok; ++k) {
            IntPoly cur(fc);
            IntPoly h(std::vector<Integer>{Integer(1)});
            for (int i = 0; i < e; ++i)
                h = h * cur;
            Integer have = r - k < static_cast<int>(h.c.size()) ? h.c[static_cast<std::size_t>(r - k)] : Integer(0);
            Integer diff = g.c[static_cast<std::size_t>(r - k)] - have;
            if (diff % e != 0) {
                ok = false;
                break;
            }
            fc[static_cast<std::size_t>(m - k)] = diff / e;
        }
        if (!ok)
            continue;
        IntPoly f(fc);
        IntPoly h(std::vector<Integer>{Integer(1)});
        for (int i = 0; i < e; ++i)
            h = h * f;
        if (h == g)
            return {f, e};
    }
    return {g, 1};
}

Presentation block_even(const std::vector<std::int64_t>& a) {
    int r = static_cast<int>(a.size());
    if (r < 1)
        throw BadParams("even block needs r >= 1 coefficients");
    LinearFormMatrix B(r, r, 2);
    B.set(0, 0, 0, 1);
    B.set(0, 0, 1, a[0]);
    for (int i = 1; i < r; ++i) {
        B.set(i, 0, 1, (i % 2 == 0 ? 1 : -1) * a[static_cast<std::size_t>(i)]);
        B.at(i, i).coeffs[0] += 1;
    }
    for (int i = 0; i + 1 < r; ++i)
        B.set(i, i + 1, 1, 1);

    MPoly g(2);
    for (int k = 0; k <= r; ++k)
        g.add_term({r - k, k}, Integer(static_cast<long>(k == 0 ? 1 : a[static_cast<std::size_t>(k - 1)])));
    if (!(symbolic_det(B) == g))
        throw BadCoefficients("det B = " + symbolic_det(B).to_string() + " differs from g = " + g.to_string());

    std::vector<Integer> gc(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k)
        gc[static_cast<std::size_t>(r - k)] = Integer(static_cast<long>(k == 0 ? 1 : a[static_cast<std::size_t>(k - 1)]));
    auto [f, e] = primary_decomposition(IntPoly(gc));

    Presentation P;
    P.d = 2 * r;
    P.dprime = 2;
    P.M = hyperbolic(B);
    BlockInfo info;
    info.kind = BlockInfo::Kind::Even;
    info.r = r;
    info.coeffs = a;
    info.f = f;
    info.e = e;
    P.blocks.push_back(info);
    return P;
}

Presentation direct_sum(const std::vector<Presentation>& parts) {
    if (parts.empty())
        throw BadParams("direct_sum of an empty list");
    int dp = parts[0].dprime;
    int d = 0;
    bool provenance = true;
    for (const auto& q : parts) {
        if (q.dprime != dp)
            throw MixedDerivedRank("direct_sum: derived ranks " + std::to_string(dp) + " and " + std::to_string(q.dprime));
        d += q.d;
        provenance = provenance && q.has_blocks();
    }
    Presentation P;
    P.d = d;
    P.dprime = dp;
    P.M = LinearFormMatrix(d, d, dp);
    int off = 0;
    for (const auto& q : parts) {
        for (int i = 0; i < q.d; ++i)
            for (int j = 0; j < q.d; ++j)
                P.M.at(off + i, off + j) = q.M.at(i, j);
        off += q.d;
        if (provenance)
            P.blocks.insert(P.blocks.end(), q.blocks.begin(), q.blocks.end());
    }
    return P;
}

Presentation from_R(const LinearFormMatrix& R) {
    if (R.rows() != R.cols() || R.nvars() != 3)
        throw BadParams("R must be square with entries in three variables");
    if (R.rows() < 2)
        throw BadParams("R must have size r >= 2");
    Presentation P;
    P.d = 2 * R.rows();
    P.dprime = 3;
    P.M = hyperbolic(R);
    P.R = R;
    return P;
}

Presentation from_matrix(const LinearFormMatrix& M) {
    if (!M.is_antisymmetric())
        throw BadParams("M must be antisymmetric with zero diagonal");
    Presentation P;
    P.d = M.rows();
    P.dprime = M.nvars();
    P.M = M;
    return P;
}

std::vector<std::int64_t> bracket(const Presentation& P, const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) {
    if (static_cast<int>(u.size()) != P.d || static_cast<int>(v.size()) != P.d)
        throw BadParams("bracket: vectors must have length d");
    std::vector<std::int64_t> out(static_cast<std::size_t>(P.dprime), 0);
    for (int i = 0; i < P.d; ++i) {
        if (u[static_cast<std::size_t>(i)] == 0)
            continue;
        for (int j = 0; j < P.d; ++j) {
            std::int64_t s = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
            if (s == 0)
                continue;
            const auto& c = P.M.at(i, j).coeffs;
            for (int k = 0; k < P.dprime; ++k)
                out[static_cast<std::size_t>(k)] += s * c[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

bool is_full(const Presentation& P) {
    IntMatrix img;
    for (int i = 0; i < P.d; ++i)
        for (int j = i + 1; j < P.d; ++j) {
            std::vector<Integer> row;
            for (auto c : P.M.at(i, j).coeffs)
                row.emplace_back(static_cast<long>(c));
            img.push_back(row);
        }
    if (img.empty())
        return P.dprime == 0;
    auto snf = smith(img);
    return std::count_if(snf.divisors.begin(), snf.divisors.end(), [](const Integer& x) { return x != 0; }) == P.dprime;
}

namespace {

/// d x (d * d') matrix [M(e_1) | ... | M(e_d')].
IntMatrix radical_matrix(const Presentation& P) {
    IntMatrix m(static_cast<std::size_t>(P.d), std::vector<Integer>(static_cast<std::size_t>(P.d * P.dprime), Integer(0)));
    for (int i = 0; i < P.d; ++i)
        for (int k = 0; k < P.dprime; ++k)
            for (int j = 0; j < P.d; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k * P.d + j)] = static_cast<long>(P.M.at(i, j).coeffs[static_cast<std::size_t>(k)]);
    return m;
}

IntMatrix image_matrix(const Presentation& P) {
    IntMatrix img;
    for (int i = 0; i < P.d; ++i)
        for (int j = i + 1; j < P.d; ++j) {
            std::vector<Integer> row;
            for (auto c : P.M.at(i, j).coeffs)
                row.emplace_back(static_cast<long>(c));
            img.push_back(row);
        }
    return img;
}

} // namespace

bool radical_trivial_mod_p(const Presentation& P, std::int64_t p) {
    if (P.d == 0)
        return true;
    auto v = padic_divisor_valuations(radical_matrix(P), static_cast<int>(p), 1);
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; }) && static_cast<int>(v.size()) == P.d;
}

namespace {

/// Brackets [e_j, e_k] as flat table: tab[(j * d + k) * d' + l].
std::vector<std::int64_t> bracket_table(const Presentation& P) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(P.d * P.d * P.dprime));
    for (int j = 0; j < P.d; ++j)
        for (int k = 0; k < P.d; ++k)
            for (int l = 0; l < P.dprime; ++l)
                t[static_cast<std::size_t>((j * P.d + k) * P.dprime + l)] = P.M.at(j, k).coeffs[static_cast<std::size_t>(l)];
    return t;
}

/// Ideal test using only the x-parts of the first d rows of xrows (a d x d
/// upper triangular block, row-major) and the y-lattice Y (d' x d' HNF).
bool ideal_factored(const std::vector<std::int64_t>& tab, int d, int dp, const std::int64_t* xrows, int xstride, const LatticeHNF& Y) {
    std::vector<std::int64_t> w(static_cast<std::size_t>(dp));
    for (int r = 0; r < d; ++r) {
        const std::int64_t* b = xrows + r * xstride;
        for (int j = 0; j < d; ++j) {
            std::fill(w.begin(), w.end(), 0);
            for (int k = r; k < d; ++k) {
                std::int64_t bk = b[k];
                if (bk == 0)
                    continue;
                const std::int64_t* t = tab.data() + (j * d + k) * dp;
                for (int l = 0; l < dp; ++l)
                    w[static_cast<std::size_t>(l)] += bk * t[l];
            }
            // w in Y ?
            for (int l = 0; l < dp; ++l) {
                std::int64_t dl = Y.at(l, l);
                std::int64_t wl = w[static_cast<std::size_t>(l)];
                if (wl % dl != 0)
                    return false;
                std::int64_t c = wl / dl;
                if (c != 0)
                    for (int m = l; m < dp; ++m)
                        w[static_cast<std::size_t>(m)] -= c * Y.at(l, m);
            }
        }
    }
    return true;
}

LatticeHNF y_block(const LatticeHNF& L, int d) {
    LatticeHNF Y;
    Y.n = L.n - d;
    Y.h.resize(static_cast<std::size_t>(Y.n * Y.n));
    for (int i = 0; i < Y.n; ++i)
        for (int j = 0; j < Y.n; ++j)
            Y.at(i, j) = L.at(d + i, d + j);
    return Y;
}

} // namespace

bool is_ideal(const Presentation& P, const LatticeHNF& L) {
    if (L.n != P.d + P.dprime)
        throw BadParams("is_ideal: lattice rank must be d + d'");
    auto tab = bracket_table(P);
    return ideal_factored(tab, P.d, P.dprime, L.h.data(), L.n, y_block(L, P.d));
}

Integer oracle_cost(const Presentation& P, std::int64_t p, int kmax, bool exhaustive) {
    Integer total(0);
    for (int k = 0; k <= kmax; ++k) {
        if (exhaustive) {
            total += count_hnf(P.d + P.dprime, Integer(p), k);
        } else {
            for (int a = 0; a <= k; ++a)
                total += count_hnf(P.d, Integer(p), a) * count_hnf(P.dprime, Integer(p), k - a);
        }
    }
    return total;
}

std::vector<Integer> oracle_count(const Presentation& P, std::int64_t p, int kmax, const OracleOptions& opt) {
    if (p < 2 || !is_prime(p))
        throw BadParams("oracle_count: p must be prime");
    if (kmax < 0)
        throw BadParams("oracle_count: kmax must be nonnegative");
    Integer cost = oracle_cost(P, p, kmax, opt.exhaustive);
    if (cost > Integer(opt.budget))
        throw BudgetExceeded("oracle would test " + cost.get_str() + " lattices, budget is " + Integer(opt.budget).get_str());

    const int d = P.d, dp = P.dprime, n = d + dp;
    const int ip = static_cast<int>(p);
    auto tab = bracket_table(P);
    std::vector<Integer> result(static_cast<std::size_t>(kmax) + 1, Integer(0));
    std::mutex mu;

    if (opt.exhaustive) {
        std::vector<std::pair<int, std::vector<int>>> tasks;
        for (int k = 0; k <= kmax; ++k)
            for (auto& t : diagonal_types(n, k))
                tasks.emplace_back(k, std::move(t));
        detail::run_parallel(tasks.size(), opt.jobs, [&](std::size_t i) {
            const auto& [k, exps] = tasks[i];
            std::int64_t count = 0;
            for_each_hnf_with_diagonal(ip, exps, [&](const LatticeHNF& L) {
                if (ideal_factored(tab, d, dp, L.h.data(), n, y_block(L, d)))
                    ++count;
            });
            std::lock_guard lk(mu);
            result[static_cast<std::size_t>(k)] += count;
        });
        return result;
    }

    // Factored: y-parts of the x-rows do not affect the ideal test and each
    // admissible (x-part, Y) stands for |Z^d' : Y|^d lattices.
    struct Task {
        int k;
        int b; // log_p |Z^d' : Y|
        std::vector<int> xt, yt;
    };
    std::vector<Task> tasks;
    for (int k = 0; k <= kmax; ++k)
        for (int a = 0; a <= k; ++a)
            for (auto& xt : diagonal_types(d, a))
                for (auto& yt : diagonal_types(dp, k - a))
                    tasks.push_back({k, k - a, xt, yt});
    detail::run_parallel(tasks.size(), opt.jobs, [&](std::size_t i) {
        const Task& t = tasks[i];
        std::vector<LatticeHNF> ys;
        for_each_hnf_with_diagonal(ip, t.yt, [&](const LatticeHNF& Y) { ys.push_back(Y); });
        std::int64_t count = 0;
        for_each_hnf_with_diagonal(ip, t.xt, [&](const LatticeHNF& X) {
            for (const auto& Y : ys)
                if (ideal_factored(tab, d, dp, X.h.data(), d, Y))
                    ++count;
        });
        Integer weight;
        mpz_ui_pow_ui(weight.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(t.b * d));
        std::lock_guard lk(mu);
        result[static_cast<std::size_t>(t.k)] += weight * count;
    });
    return result;
}

std::set<std::int64_t> bad_primes(const Presentation& P, const BadPrimeOptions& opt) {
    std::set<std::int64_t> bad{2};
    auto add_divisors = [&bad](const IntMatrix& m, std::size_t want) {
        if (m.empty())
            return;
        auto snf = smith(m);
        std::size_t nz = static_cast<std::size_t>(std::count_if(snf.divisors.begin(), snf.divisors.end(), [](const Integer& x) { return x != 0; }));
        if (nz == 0 || nz < want)
            return;
        for (auto q : prime_divisors(snf.divisors[nz - 1]))
            bad.insert(q);
    };
    // primes where the radical mod p is nontrivial, and torsion of L / [L, L]
    add_divisors(radical_matrix(P), static_cast<std::size_t>(P.d));
    add_divisors(image_matrix(P), static_cast<std::size_t>(P.dprime));

    if (P.has_blocks()) {
        std::vector<IntPoly> fs;
        for (const auto& b : P.blocks)
            if (b.kind == BlockInfo::Kind::Even && std::find(fs.begin(), fs.end(), b.f) == fs.end())
                fs.push_back(b.f);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (auto q : prime_divisors(fs[i].lead()))
                bad.insert(q);
            if (fs[i].degree() >= 2)
                for (auto q : prime_divisors(discriminant(fs[i])))
                    bad.insert(q);
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                Integer res = resultant(fs[i], fs[j]);
                if (res == 0)
                    throw BadParams("even blocks with polynomials sharing a factor");
                for (auto q : prime_divisors(res))
                    bad.insert(q);
            }
        }
    }
    if (P.R) {
        int r = P.R->rows();
        for (std::int64_t q = 2; q + 1 <= r; ++q)
            if (is_prime(q))
                bad.insert(q);
        CurveSpec cs(*P.R);
        for (std::int64_t q = 2; q <= opt.scan_limit; ++q)
            if (is_prime(q) && !is_smooth_mod_p(cs, q))
                bad.insert(q);
    }
    return bad;
}

} // namespace nilzeta
