#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace b32 {

// Dense integer matrix with exact (GMP) entries.  All normal-form and
// kernel computations are fraction-free or rational-exact; nothing here
// ever touches floating point.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

    static IntMat identity(std::size_t n);
    static IntMat from(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMat transpose() const;
    IntMat mul(const IntMat& o) const;
    IntMat kronecker(const IntMat& o) const;
    bool is_symmetric() const;
    bool is_zero() const;
    mpz_class trace() const;

    void swap_rows(std::size_t i, std::size_t j);
    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> a_;
};

// Basis of {x : x A = 0} as rows, saturated (a Z-basis of the kernel
// lattice, primitive: any integer kernel vector is a Z-combination).
IntMat left_kernel_basis(const IntMat& a);

// Hermite normal form of the row lattice (row-style, lower bound on rows
// dropped); returns the HNF rows and optionally the transform U with
// U*A = H.
IntMat hnf_rows(const IntMat& a, IntMat* transform = nullptr);

// Elementary divisors d1 | d2 | ... of a (Smith normal form diagonal,
// nonzero entries only).
std::vector<mpz_class> elementary_divisors(IntMat a);

mpz_class det(IntMat a);

// Exact test for positive definiteness of a symmetric integer matrix
// (fraction-free LDL^T: all leading principal minors positive).
bool is_positive_definite(const IntMat& a);

// Solve x * A = b over the integers; returns true and fills x when an
// integral solution exists.
bool solve_left_integer(const IntMat& a, const std::vector<mpz_class>& b, std::vector<mpz_class>& x);

// Solve A * x = b over the rationals; num/den returned as (x, d) with
// A*(x/d) = b, d > 0 minimal.  Throws if inconsistent.
bool solve_right_rational(const IntMat& a, const std::vector<mpz_class>& b,
                          std::vector<mpz_class>& x, mpz_class& d);

// Rank over Q.
std::size_t rank(IntMat a);

}  // namespace b32
