#pragma once

// Integer lattices: Hermite normal form enumeration of p-power index
// sublattices, Smith normal form with transforms, membership.

#include <cstdint>
#include <functional>
#include <vector>

#include "nilzeta/ratfun.hpp"

namespace nilzeta {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
Integer determinant(IntMatrix m);

/// Row-style Hermite normal form: upper triangular, positive diagonal,
/// 0 <= H[i][j] < H[j][j] for j > i.  Rows generate the lattice.
struct LatticeHNF {
    int n = 0;
    std::vector<std::int64_t> h; // row-major n x n

    [[nodiscard]] std::int64_t at(int i, int j) const { return h[static_cast<std::size_t>(i * n + j)]; }
    std::int64_t& at(int i, int j) { return h[static_cast<std::size_t>(i * n + j)]; }
    [[nodiscard]] Integer index() const;
    [[nodiscard]] IntMatrix to_matrix() const;
    friend bool operator==(const LatticeHNF&, const LatticeHNF&) = default;
};

/// Canonical HNF of the lattice spanned by the rows of a full-rank n x n
/// (or taller) integer matrix.
LatticeHNF hnf_from_rows(const IntMatrix& rows);

/// Exponent vectors (k_1..k_n) with sum k, in lexicographic order.
std::vector<std::vector<int>> diagonal_types(int n, int k);

/// Calls visit for every HNF with diagonal p^(k_1), ..., p^(k_n), digits in
/// lexicographic row-major order.
void for_each_hnf_with_diagonal(int p, const std::vector<int>& exps, const std::function<void(const LatticeHNF&)>& visit);

/// Every sublattice of Z^n of index p^k exactly once.
void for_each_hnf(int n, int p, int k, const std::function<void(const LatticeHNF&)>& visit);
std::vector<LatticeHNF> enumerate_hnf(int n, int p, int k);

/// True when some basis entry is not divisible by p, i.e. the smallest
/// elementary divisor is 1.
bool is_maximal(const LatticeHNF& L, int p);
std::vector<LatticeHNF> enumerate_maximal_hnf(int n, int p, int k);

/// Number of sublattices of Z^n of index p^k.
Integer count_hnf(int n, const Integer& p, int k);

struct SnfResult {
    std::vector<Integer> divisors; // d_1 | d_2 | ...
    IntMatrix left;                // U
    IntMatrix right;               // W, with U * M * W = diag(divisors)
};

SnfResult smith(const IntMatrix& m);

/// Descending p-adic valuations of the elementary divisors of a lattice of
/// p-power index.
std::vector<int> elementary_type(const LatticeHNF& L, int p);

bool member(const LatticeHNF& L, const std::vector<std::int64_t>& v);

/// p-adic valuations of the elementary divisors of an m x n integer matrix,
/// each capped at cap (a zero divisor or one of valuation >= cap reads as
/// cap).  Returns min(m, n) values in ascending order.
std::vector<int> padic_divisor_valuations(const IntMatrix& m, int p, int cap);

} // namespace nilzeta
