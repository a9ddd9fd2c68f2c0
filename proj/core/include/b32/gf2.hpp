#pragma once

#include <cstdint>
#include <vector>

namespace b32 {

// Square matrix over GF(2), dimension <= 16, rows bit-packed into uint16.
// This covers every matrix group in the catalog (GL_5(2) through GL_10(2));
// anything larger is handled as a permutation group.
struct Gf2Mat {
    int d = 0;
    std::uint16_t row[16] = {0};

    static Gf2Mat identity(int d);

    bool operator==(const Gf2Mat& o) const;
    bool operator<(const Gf2Mat& o) const;

    Gf2Mat mul(const Gf2Mat& o) const;
    std::uint16_t apply(std::uint16_t v) const;  // row vector * matrix
    bool invert(Gf2Mat& out) const;
    Gf2Mat pow(long e) const;
    long order(long cap = 1 << 20) const;

    // block diagonal join
    static Gf2Mat block_diag(const Gf2Mat& a, const Gf2Mat& b);
};

// companion matrix of a polynomial given by coefficient bits (bit i = x^i),
// monic of degree d: bit d set
Gf2Mat companion(std::uint32_t poly_bits, int d);

std::vector<std::uint32_t> irreducible_polys_gf2(int degree);

// order of the roots of an irreducible polynomial (multiplicative order of
// x modulo the polynomial)
long poly_root_order(std::uint32_t poly_bits, int d);

// characteristic polynomial bits of a GF(2) matrix
std::uint32_t charpoly_gf2(const Gf2Mat& m);

}  // namespace b32
