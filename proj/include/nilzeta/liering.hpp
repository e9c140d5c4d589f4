#pragma once

// Class-2 Lie rings L = Z^d (x-block) + Z^d' (y-block, central) given by an
// antisymmetric matrix M(y) of linear forms: [x_i, x_j] = M(y)_ij.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilzeta/forms.hpp"
#include "nilzeta/intlat.hpp"
#include "nilzeta/modcurves.hpp"

namespace nilzeta {

/// Block description of a ring built from odd and even indecomposables.
struct BlockInfo {
    enum class Kind { Odd, Even };
    Kind kind = Kind::Odd;
    int r = 0;
    std::vector<std::int64_t> coeffs; // even: a_1..a_r of g = y1^r + a_1 y1^(r-1) y2 + ...
    IntPoly f;                        // even: g(t, 1) = f(t)^e with f monic
    int e = 0;
};

struct Presentation {
    int d = 0;
    int dprime = 0;
    LinearFormMatrix M;
    std::vector<BlockInfo> blocks;       // empty unless built from blocks
    std::optional<LinearFormMatrix> R;   // set when built by from_R

    [[nodiscard]] bool has_blocks() const { return !blocks.empty(); }
    [[nodiscard]] std::string describe() const;
};

Presentation block_odd(int r);
/// Even block with g = y1^r + a_1 y1^(r-1) y2 + ... + a_r y2^r.
Presentation block_even(const std::vector<std::int64_t>& a);
Presentation direct_sum(const std::vector<Presentation>& parts);
Presentation from_R(const LinearFormMatrix& R);
Presentation from_matrix(const LinearFormMatrix& M);

/// Largest e with g(t,1) = f^e for a monic integer f.
std::pair<IntPoly, int> primary_decomposition(const IntPoly& g);

/// Coordinates of [u, v] in the y-basis.
std::vector<std::int64_t> bracket(const Presentation& P, const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v);

/// The brackets [e_i, e_j] span a finite-index subgroup of Z^d'.
bool is_full(const Presentation& P);

/// No nonzero x in F_p^d with [x, L] = 0 mod p.
bool radical_trivial_mod_p(const Presentation& P, std::int64_t p);

/// [L, Lambda] contained in Lambda, for Lambda of rank d + d' in the
/// coordinates x_1..x_d, y_1..y_d'.
bool is_ideal(const Presentation& P, const LatticeHNF& L);

struct OracleOptions {
    bool exhaustive = false;       // iterate the y-digits of the x-rows too
    double budget = 2e7;           // maximal number of is_ideal calls
    unsigned jobs = 0;             // 0: hardware concurrency
};

/// Number of is_ideal calls oracle_count would make.
Integer oracle_cost(const Presentation& P, std::int64_t p, int kmax, bool exhaustive);

/// a_{p^0}, ..., a_{p^kmax}: ideals of index p^k.
std::vector<Integer> oracle_count(const Presentation& P, std::int64_t p, int kmax, const OracleOptions& opt = {});

struct BadPrimeOptions {
    std::int64_t scan_limit = 100; // non-smooth scan bound for R-form rings
};

/// Conservative set of primes at which closed forms are not claimed.
std::set<std::int64_t> bad_primes(const Presentation& P, const BadPrimeOptions& opt = {});

} // namespace nilzeta
