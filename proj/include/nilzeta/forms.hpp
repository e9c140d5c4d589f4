#pragma once

// Matrices of integer linear forms in y_1..y_k and the small multivariate
// polynomial type used for their determinants.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilzeta/intlat.hpp"

namespace nilzeta {

/// sum_k coeffs[k] * y_(k+1)
struct LinearForm {
    std::vector<std::int64_t> coeffs;

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] std::int64_t eval(const std::vector<std::int64_t>& y) const;
    LinearForm operator-() const;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

class LinearFormMatrix {
public:
    LinearFormMatrix() = default;
    LinearFormMatrix(int rows, int cols, int nvars);

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }
    [[nodiscard]] int nvars() const { return nvars_; }
    [[nodiscard]] const LinearForm& at(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
    LinearForm& at(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
    /// Set coefficient of y_(k+1) in entry (i, j).
    void set(int i, int j, int k, std::int64_t c) { at(i, j).coeffs[static_cast<std::size_t>(k)] = c; }

    [[nodiscard]] bool is_antisymmetric() const;
    [[nodiscard]] LinearFormMatrix transposed() const;
    /// Integer matrix obtained by substituting y.
    [[nodiscard]] IntMatrix eval(const std::vector<Integer>& y) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const LinearFormMatrix&, const LinearFormMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    std::vector<LinearForm> e_;
};

/// Polynomial in y_1..y_k with integer coefficients.
class MPoly {
public:
    using Mono = std::vector<int>;

    MPoly() = default;
    explicit MPoly(int nvars) : nvars_(nvars) {}
    static MPoly constant(int nvars, const Integer& c);
    static MPoly from_form(const LinearForm& f);

    [[nodiscard]] int nvars() const { return nvars_; }
    [[nodiscard]] const std::map<Mono, Integer>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] int total_degree() const;

    void add_term(const Mono& m, const Integer& c);
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend bool operator==(const MPoly&, const MPoly&) = default;

    [[nodiscard]] MPoly derivative(int var) const;
    [[nodiscard]] Integer eval(const std::vector<Integer>& y) const;
    /// Value mod p in [0, p).
    [[nodiscard]] std::int64_t eval_mod(const std::vector<std::int64_t>& y, std::int64_t p) const;
    [[nodiscard]] std::string to_string() const;

private:
    int nvars_ = 0;
    std::map<Mono, Integer> terms_;
};

/// Determinant of a square matrix of linear forms, expanded symbolically.
MPoly symbolic_det(const LinearFormMatrix& m);

} // namespace nilzeta
