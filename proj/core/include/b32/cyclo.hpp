#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace b32 {

// Element of Z[zeta_n], stored as a sparse integer combination of roots of
// unity zeta_n^e.  Values are kept in the canonical integral basis obtained
// by CRT-splitting the exponent over the prime powers of n and reducing each
// prime-power coordinate with 1 + zeta^{m/p} + zeta^{2m/p} + ... = 0.
// Character values are sums of a few roots, so the sparse form stays small
// even when sums of mixed conductors show up.
class Cyclo {
public:
    Cyclo() : n_(1) {}
    Cyclo(long v) : n_(1) { if (v != 0) c_[0] = v; }          // NOLINT(google-explicit-constructor)
    Cyclo(const mpz_class& v) : n_(1) { if (v != 0) c_[0] = v; }  // NOLINT

    // zeta_n^e
    static Cyclo root(std::int64_t n, std::int64_t e);

    std::int64_t conductor() const { return n_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return n_ == 1; }

    // value as an integer; requires is_rational()
    mpz_class rational() const;

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
    Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
    Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
    bool operator==(const Cyclo& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    // complex conjugation zeta -> zeta^{-1}
    Cyclo conj() const;

    // Galois map zeta_n -> zeta_n^k, gcd(k, n) = 1
    Cyclo galois(std::int64_t k) const;

    // sum over the Galois group of Q(zeta_n)/Q; the result is rational
    mpz_class trace_to_q() const;

    // exact division by a nonzero integer; returns false if not integral
    bool divide_exact(const mpz_class& m, Cyclo& out) const;

    Cyclo scaled(const mpz_class& m) const;

    // total order for deterministic sorting (conductor, then exponent map)
    int cmp(const Cyclo& o) const;
    bool operator<(const Cyclo& o) const { return cmp(o) < 0; }

    const std::map<std::int64_t, mpz_class>& coeffs() const { return c_; }

    // integer coordinates w.r.t. the canonical basis exponents of Z[zeta_n];
    // used to flatten values into integer matrices
    static const std::vector<std::int64_t>& basis_exponents(std::int64_t n);
    std::vector<mpz_class> coordinates(std::int64_t n) const;

    std::string str() const;

private:
    void canonicalize();
    void reduce_conductor();

    std::int64_t n_;
    std::map<std::int64_t, mpz_class> c_;  // exponent -> coefficient
};

}  // namespace b32
