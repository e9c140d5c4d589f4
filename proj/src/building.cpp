#include "nilzeta/building.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "nilzeta/errors.hpp"
#include "nilzeta/modcurves.hpp"
#include "parallel.hpp"

namespace nilzeta {

namespace {

Integer ipow(std::int64_t p, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

int valuation(Integer v, std::int64_t p) {
    if (v == 0)
        throw BadParams("valuation of zero");
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (abs(v) != 1)
        throw BadParams("lattice index is not a power of p");
    return e;
}

/// M(a) = sum_k a_k M_k as a d x d integer matrix.
IntMatrix eval_M(const Presentation& P, const std::vector<Integer>& a) { return P.M.eval(a); }

} // namespace

int wprime_from_alpha(const Presentation& P, const AlphaResult& ar, std::int64_t p) {
    const auto& r = ar.edtype;
    int r1 = r.empty() ? 0 : r[0];
    int w = std::accumulate(r.begin(), r.end(), 0);
    if (r1 == 0)
        return w;
    int dp = P.dprime;
    std::size_t d = static_cast<std::size_t>(P.d);
    IntMatrix B(d, std::vector<Integer>(d * static_cast<std::size_t>(dp - 1), Integer(0)));
    for (int i = 0; i + 1 < dp; ++i) {
        std::vector<Integer> col;
        for (int k = 0; k < dp; ++k)
            col.push_back(ar.alpha[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        IntMatrix Mi = eval_M(P, col);
        Integer scale = ipow(p, r1 - r[static_cast<std::size_t>(i)]);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                B[a][static_cast<std::size_t>(i) * d + b] = scale * Mi[a][b];
    }
    auto e = padic_divisor_valuations(B, static_cast<int>(p), r1);
    int extra = 0;
    for (int v : e)
        extra += r1 - std::min(v, r1);
    return w + extra;
}

AlphaResult alpha_from_lattice(const LatticeHNF& Mder, std::int64_t p) {
    IntMatrix m = Mder.to_matrix();
    auto snf = smith(m);
    std::size_t n = snf.divisors.size();
    AlphaResult ar;
    for (std::size_t i = 0; i < n; ++i)
        ar.edtype.push_back(valuation(snf.divisors[n - 1 - i], p));
    // Z^n M W = Z^n U^-1 D = Z^n D, so W with reversed columns gives the
    // descending diagonal.
    ar.alpha.assign(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ar.alpha[i][j] = snf.right[i][n - 1 - j];
    IntMatrix diag(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        diag[i][i] = ipow(p, ar.edtype[i]);
    if (!(hnf_from_rows(matmul(m, ar.alpha)) == hnf_from_rows(diag)))
        throw Error("alpha_from_lattice: transformed lattice is not diagonal");
    return ar;
}

int weight_wprime(const Presentation& P, const LatticeHNF& Mder, std::int64_t p) {
    if (Mder.n != P.dprime)
        throw BadParams("weight_wprime: lattice rank must equal d'");
    if (!radical_trivial_mod_p(P, p))
        throw NotFull("some nonzero x has [x, L] = 0 mod p; the homothety reduction does not apply at p = " + std::to_string(p));
    return wprime_from_alpha(P, alpha_from_lattice(Mder, p), p);
}

int min_rank_mod_p(const Presentation& P, std::int64_t p) {
    int best = P.d;
    for (const auto& y : projective_points(P.dprime - 1, p)) {
        std::vector<Integer> yi(y.begin(), y.end());
        auto v = padic_divisor_valuations(P.M.eval(yi), static_cast<int>(p), 1);
        int rank = static_cast<int>(std::count(v.begin(), v.end(), 0));
        best = std::min(best, rank);
    }
    return best;
}

int walk_index_bound(const Presentation& P, std::int64_t p, int K, CompletenessBound bound) {
    if (P.dprime <= 1)
        return 0;
    if (bound == CompletenessBound::Trivial)
        return K;
    // w' >= w + r_1 * rho and r_1 >= w / (d' - 1)
    int rho = min_rank_mod_p(P, p);
    return K * (P.dprime - 1) / (P.dprime - 1 + rho);
}

ASeries building_series(const Presentation& P, std::int64_t p, int K, const WalkOptions& opt) {
    if (K < 0)
        throw BadParams("building_series: K must be nonnegative");
    if (!is_prime(p))
        throw BadParams("building_series: p must be prime");
    if (!radical_trivial_mod_p(P, p))
        throw NotFull("some nonzero x has [x, L] = 0 mod p; the homothety reduction does not apply at p = " + std::to_string(p));
    ASeries out;
    out.p = p;
    out.order = K;
    out.coeffs.assign(static_cast<std::size_t>(K) + 1, Integer(0));
    out.min_rank = P.dprime >= 1 ? min_rank_mod_p(P, p) : 0;
    out.max_w = walk_index_bound(P, p, K, opt.bound);

    std::vector<std::vector<int>> tasks;
    for (int w = 0; w <= out.max_w; ++w)
        for (auto& t : diagonal_types(P.dprime, w))
            tasks.push_back(std::move(t));
    std::mutex mu;
    detail::run_parallel(tasks.size(), opt.jobs, [&](std::size_t i) {
        std::vector<Integer> local(static_cast<std::size_t>(K) + 1, Integer(0));
        std::int64_t seen = 0;
        int w = std::accumulate(tasks[i].begin(), tasks[i].end(), 0);
        Integer weight = ipow(p, w * P.d);
        for_each_hnf_with_diagonal(static_cast<int>(p), tasks[i], [&](const LatticeHNF& L) {
            if (!is_maximal(L, static_cast<int>(p)))
                return;
            ++seen;
            AlphaResult ar = alpha_from_lattice(L, p);
            int wp = wprime_from_alpha(P, ar, p);
            if (wp < w)
                throw Error("walk: w' < w at a vertex, the presentation violates the weight bound");
            // the truncation bound relies on this
            if (opt.bound == CompletenessBound::Rank && wp < w + ar.edtype[0] * out.min_rank)
                throw Error("walk: rank bound violated");
            if (wp <= K)
                local[static_cast<std::size_t>(wp)] += weight;
        });
        std::lock_guard lk(mu);
        out.vertices += seen;
        for (std::size_t k = 0; k < local.size(); ++k)
            out.coeffs[k] += local[k];
    });
    return out;
}

GeoRatFun assemble_zeta(const GeoRatFun& A, int d, int dprime) {
    GeoRatFun z = A;
    for (int i = 0; i < d; ++i)
        z *= GeoRatFun::geometric(i, 1);
    z *= GeoRatFun::geometric(d * dprime, d + dprime);
    return z;
}

std::vector<Integer> assemble_zeta(const std::vector<Integer>& A, std::int64_t p, int d, int dprime) {
    std::vector<Integer> c = A;
    auto geom = [&c](const Integer& x, int step) {
        for (std::size_t k = static_cast<std::size_t>(step); k < c.size(); ++k)
            c[k] += x * c[k - static_cast<std::size_t>(step)];
    };
    for (int i = 0; i < d; ++i)
        geom(ipow(p, i), 1);
    geom(ipow(p, d * dprime), d + dprime);
    return c;
}

std::vector<Integer> series_at(const GeoRatFun& f, std::int64_t p, int K) { return series_in_T(f, K).at(Integer(p)); }

std::map<std::vector<int>, std::int64_t> census_by_type(int n, std::int64_t p, int w) {
    std::map<std::vector<int>, std::int64_t> out;
    for_each_hnf(n, static_cast<int>(p), w, [&](const LatticeHNF& L) {
        if (is_maximal(L, static_cast<int>(p)))
            ++out[elementary_type(L, static_cast<int>(p))];
    });
    return out;
}

} // namespace nilzeta
