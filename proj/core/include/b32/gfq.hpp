#pragma once

#include <cstdint>
#include <vector>

#include "b32/cyclo.hpp"

namespace b32 {

// F_{2^m} as F_2[x]/(f) with f the lexicographically least irreducible
// polynomial of degree m.  Elements are coefficient bitstrings packed into
// 64-bit words.  m can reach ~200 (needed when 19 or 31 divide element
// orders), so no fixed-size storage.
class Gf2Field {
public:
    using El = std::vector<std::uint64_t>;

    explicit Gf2Field(int m);

    int degree() const { return m_; }
    const std::vector<std::uint64_t>& modulus() const { return mod_; }

    El zero() const { return El(words_, 0); }
    El one() const;
    El x() const;

    bool is_zero(const El& a) const;
    El add(const El& a, const El& b) const;
    El mul(const El& a, const El& b) const;
    El pow(El base, mpz_class e) const;

    // multiplicative order; factors must include all primes of 2^m - 1
    // restricted to candidates dividing `bound_order`
    bool has_order(const El& a, std::int64_t order) const;

    // deterministic element of exact multiplicative order r (r | 2^m - 1)
    El element_of_order(std::int64_t r) const;

    // numeric value of the lowest word, for printing/serialization
    std::vector<std::uint64_t> words(const El& a) const { return a; }

private:
    int m_;
    int words_;
    std::vector<std::uint64_t> mod_;  // modulus poly bits, degree m
};

// Reduction Z[zeta_n] -> F_{2^M} killing 2-power roots: zeta_{2^a} -> 1,
// zeta_{m'} -> g^{N/m'} for the fixed master generator g of odd order N.
// One reducer per group keeps every reduction in a single field, so sums
// and products with mixed conductors stay consistent.
class Mod2Reducer {
public:
    explicit Mod2Reducer(std::int64_t odd_order);

    const Gf2Field& field() const { return field_; }
    std::int64_t master_order() const { return n_; }

    Gf2Field::El reduce(const Cyclo& v) const;

private:
    std::int64_t n_;
    Gf2Field field_;
    Gf2Field::El gen_;
};

}  // namespace b32
