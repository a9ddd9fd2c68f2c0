#include "b32/gf2.hpp"

#include <algorithm>

#include "b32/util.hpp"

namespace b32 {

Gf2Mat Gf2Mat::identity(int d) {
    Gf2Mat m;
    m.d = d;
    for (int i = 0; i < d; ++i) m.row[i] = (std::uint16_t)(1u << i);
    return m;
}

bool Gf2Mat::operator==(const Gf2Mat& o) const {
    if (d != o.d) return false;
    for (int i = 0; i < d; ++i)
        if (row[i] != o.row[i]) return false;
    return true;
}

bool Gf2Mat::operator<(const Gf2Mat& o) const {
    if (d != o.d) return d < o.d;
    for (int i = 0; i < d; ++i)
        if (row[i] != o.row[i]) return row[i] < o.row[i];
    return false;
}

Gf2Mat Gf2Mat::mul(const Gf2Mat& o) const {
    // rows of the product: row_i(this) * o
    Gf2Mat r;
    r.d = d;
    for (int i = 0; i < d; ++i) {
        std::uint16_t acc = 0;
        std::uint16_t bits = row[i];
        while (bits) {
            int j = __builtin_ctz(bits);
            bits &= bits - 1;
            acc ^= o.row[j];
        }
        r.row[i] = acc;
    }
    return r;
}

std::uint16_t Gf2Mat::apply(std::uint16_t v) const {
    std::uint16_t acc = 0;
    while (v) {
        int j = __builtin_ctz(v);
        v &= v - 1;
        acc ^= row[j];
    }
    return acc;
}

bool Gf2Mat::invert(Gf2Mat& out) const {
    Gf2Mat a = *this, e = identity(d);
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int i = col; i < d; ++i)
            if (a.row[i] & (1u << col)) { piv = i; break; }
        if (piv < 0) return false;
        std::swap(a.row[col], a.row[piv]);
        std::swap(e.row[col], e.row[piv]);
        for (int i = 0; i < d; ++i)
            if (i != col && (a.row[i] & (1u << col))) {
                a.row[i] ^= a.row[col];
                e.row[i] ^= e.row[col];
            }
    }
    out = e;
    return true;
}

Gf2Mat Gf2Mat::pow(long e) const {
    Gf2Mat r = identity(d), b = *this;
    while (e > 0) {
        if (e & 1) r = r.mul(b);
        b = b.mul(b);
        e >>= 1;
    }
    return r;
}

long Gf2Mat::order(long cap) const {
    Gf2Mat m = *this;
    Gf2Mat id = identity(d);
    long n = 1;
    while (!(m == id)) {
        m = m.mul(*this);
        ++n;
        check(n <= cap, "Gf2Mat::order cap exceeded");
    }
    return n;
}

Gf2Mat Gf2Mat::block_diag(const Gf2Mat& a, const Gf2Mat& b) {
    Gf2Mat r;
    r.d = a.d + b.d;
    check(r.d <= 16, "block_diag: dimension > 16");
    for (int i = 0; i < a.d; ++i) r.row[i] = a.row[i];
    for (int i = 0; i < b.d; ++i) r.row[a.d + i] = (std::uint16_t)(b.row[i] << a.d);
    return r;
}

Gf2Mat companion(std::uint32_t poly_bits, int d) {
    // with row-vector action v -> v*M: basis e_i -> e_{i+1}, e_{d-1} -> low coeffs
    Gf2Mat m;
    m.d = d;
    for (int i = 0; i + 1 < d; ++i) m.row[i] = (std::uint16_t)(1u << (i + 1));
    m.row[d - 1] = (std::uint16_t)(poly_bits & ((1u << d) - 1));
    return m;
}

namespace {

// multiply polynomials over GF(2) (bit representation)
std::uint64_t pmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (a) {
        int i = __builtin_ctzll(a);
        a &= a - 1;
        r ^= b << i;
    }
    return r;
}

std::uint64_t pmod(std::uint64_t a, std::uint64_t f) {
    int df = 63 - __builtin_clzll(f);
    while (a >> df) {
        int da = 63 - __builtin_clzll(a);
        a ^= f << (da - df);
    }
    return a;
}

}  // namespace

std::vector<std::uint32_t> irreducible_polys_gf2(int degree) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t f = (1u << degree) | 1; f < (2u << degree); f += 2) {
        if (!(f & (1u << degree))) continue;
        // f irreducible iff no factor of degree <= degree/2
        bool irred = true;
        for (std::uint32_t g = 2; g < (2u << (degree / 2)) && irred; ++g) {
            if ((std::uint32_t)pmod(f, g) == 0 && g != f) {
                int dg = 31 - __builtin_clz(g);
                if (dg >= 1 && dg < degree) irred = false;
            }
        }
        if (irred) out.push_back(f);
    }
    return out;
}

long poly_root_order(std::uint32_t poly_bits, int d) {
    // order of x mod f = least e with x^e = 1; divides 2^d - 1
    long n = (1L << d) - 1;
    for (long e : divisors(n)) {
        // compute x^e mod f
        std::uint64_t r = 1, b = 2;
        long ee = e;
        while (ee) {
            if (ee & 1) r = pmod(pmul(r, b), poly_bits);
            b = pmod(pmul(b, b), poly_bits);
            ee >>= 1;
        }
        if (r == 1) return e;
    }
    throw computation_error("poly_root_order: no order found");
}

std::uint32_t charpoly_gf2(const Gf2Mat& m) {
    // det(xI + M) over GF(2)[x]; expand by fraction-free elimination over
    // the polynomial ring is overkill at d <= 16: use Leverrier-free direct
    // expansion via minors is exponential; instead use the standard
    // Hessenberg-style method over GF(2)[x] with polynomial entries.
    int d = m.d;
    // entries as polynomial bitmasks (degree <= d)
    std::vector<std::vector<std::uint64_t>> a(d, std::vector<std::uint64_t>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::uint64_t v = (m.row[i] >> j) & 1u;
            if (i == j) v ^= 2u;  // + x
            a[i][j] = v;
        }
    // fraction-free Gaussian elimination (Bareiss) over GF(2)[x]
    std::uint64_t prev = 1;
    for (int k = 0; k + 1 < d; ++k) {
        if (a[k][k] == 0) {
            int s = -1;
            for (int i = k + 1; i < d; ++i)
                if (a[i][k]) { s = i; break; }
            if (s < 0) return 0;  // singular over GF(2)[x]: cannot happen for charpoly
            std::swap(a[k], a[s]);  // sign irrelevant in char 2
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j) {
                std::uint64_t t = pmul(a[i][j], a[k][k]) ^ pmul(a[i][k], a[k][j]);
                // exact division by prev
                if (prev != 1) {
                    // polynomial division (exact)
                    std::uint64_t q = 0, r = t;
                    int dp = 63 - __builtin_clzll(prev);
                    while (r && (63 - __builtin_clzll(r)) >= dp) {
                        int sh = (63 - __builtin_clzll(r)) - dp;
                        q ^= 1ULL << sh;
                        r ^= prev << sh;
                    }
                    check(r == 0, "charpoly_gf2: inexact division");
                    t = q;
                }
                a[i][j] = t;
            }
        prev = a[k][k];
    }
    return (std::uint32_t)a[d - 1][d - 1];
}

}  // namespace b32
