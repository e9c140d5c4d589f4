#pragma once

// Vertex walk over maximal lattices of the derived ring: weights w, w' and
// the truncated generating function A(p, T), assembled into the local
// normal zeta function.

#include <cstdint>
#include <map>
#include <vector>

#include "nilzeta/intlat.hpp"
#include "nilzeta/liering.hpp"
#include "nilzeta/ratfun.hpp"

namespace nilzeta {

struct AlphaResult {
    std::vector<int> edtype; // r_1 >= ... >= r_d' = 0
    IntMatrix alpha;         // unimodular, Mder * alpha spans diag(p^r_1, ..., 1)
};

AlphaResult alpha_from_lattice(const LatticeHNF& Mder, std::int64_t p);

struct VertexClass {
    LatticeHNF lattice;
    std::vector<int> edtype;
    int w = 0;
    int wprime = 0;
};

/// w' computed from a given alpha; any alpha with Mder * alpha spanning
/// the diagonal lattice gives the same value.
int wprime_from_alpha(const Presentation& P, const AlphaResult& ar, std::int64_t p);

/// w' of the class of Mder.  Requires the radical of M mod p to be trivial
/// (NotFull otherwise).
int weight_wprime(const Presentation& P, const LatticeHNF& Mder, std::int64_t p);

enum class CompletenessBound {
    Rank,    // w' >= w + r_1 * min rank_p M(y)
    Trivial, // w' >= w
};

struct WalkOptions {
    CompletenessBound bound = CompletenessBound::Rank;
    unsigned jobs = 0;
};

struct ASeries {
    std::int64_t p = 0;
    int order = 0;
    std::vector<Integer> coeffs; // T^0..T^order
    int max_w = 0;               // largest log_p index enumerated
    int min_rank = 0;            // min over y in P^(d'-1)(F_p) of rank_p M(y)
    std::int64_t vertices = 0;
};

/// min over y in P^(d'-1)(F_p) of the rank of M(y) mod p.
int min_rank_mod_p(const Presentation& P, std::int64_t p);

/// Largest w that can carry w' <= K under the chosen bound.
int walk_index_bound(const Presentation& P, std::int64_t p, int K, CompletenessBound bound);

ASeries building_series(const Presentation& P, std::int64_t p, int K, const WalkOptions& opt = {});

/// zeta_{Z_p^d}(s) * zeta_p((d + d')s - d d') * A.
GeoRatFun assemble_zeta(const GeoRatFun& A, int d, int dprime);
/// The same at numeric p on truncated coefficient lists.
std::vector<Integer> assemble_zeta(const std::vector<Integer>& A, std::int64_t p, int d, int dprime);

/// Series of f at X = p, Y = T to order K.
std::vector<Integer> series_at(const GeoRatFun& f, std::int64_t p, int K);

/// Number of maximal lattices of rank n and index p^w by descending
/// elementary type.
std::map<std::vector<int>, std::int64_t> census_by_type(int n, std::int64_t p, int w);

} // namespace nilzeta
