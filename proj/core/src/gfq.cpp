#include "b32/gfq.hpp"

#include "b32/util.hpp"

namespace b32 {

namespace {

int poly_deg(const std::vector<std::uint64_t>& p) {
    for (int w = (int)p.size() - 1; w >= 0; --w)
        if (p[w]) return w * 64 + 63 - __builtin_clzll(p[w]);
    return -1;
}

void poly_xor(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b, int shift) {
    int wordshift = shift / 64, bitshift = shift % 64;
    for (int i = (int)b.size() - 1; i >= 0; --i) {
        std::uint64_t lo = b[i] << bitshift;
        std::uint64_t hi = bitshift ? (b[i] >> (64 - bitshift)) : 0;
        if ((std::size_t)(i + wordshift) < a.size()) a[i + wordshift] ^= lo;
        if (hi && (std::size_t)(i + wordshift + 1) < a.size()) a[i + wordshift + 1] ^= hi;
    }
}

// a mod f, in place; f has degree df
void poly_mod(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& f, int df) {
    int da;
    while ((da = poly_deg(a)) >= df) poly_xor(a, f, da - df);
}

std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       const std::vector<std::uint64_t>& f, int df) {
    std::vector<std::uint64_t> r((2 * df + 63) / 64 + 1, 0);
    for (int w = 0; w < (int)a.size(); ++w) {
        std::uint64_t bits = a[w];
        while (bits) {
            int bit = __builtin_ctzll(bits);
            bits &= bits - 1;
            poly_xor(r, b, w * 64 + bit);
        }
    }
    poly_mod(r, f, df);
    return r;
}

std::vector<std::uint64_t> poly_gcd(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    while (poly_deg(b) >= 0) {
        int da = poly_deg(a), db = poly_deg(b);
        if (da < db) { std::swap(a, b); continue; }
        poly_xor(a, b, da - db);
    }
    return a;
}

bool is_irreducible(const std::vector<std::uint64_t>& f, int m) {
    // x^(2^m) == x mod f, and x^(2^(m/q)) - x coprime to f for primes q | m
    std::vector<std::uint64_t> xp((m + 63) / 64 + 1, 0);
    xp[0] = 2;  // the polynomial x
    auto frob = [&](std::vector<std::uint64_t> v) { return poly_mulmod(v, v, f, m); };
    std::vector<std::uint64_t> t = xp;
    for (int i = 0; i < m; ++i) t = frob(t);
    std::vector<std::uint64_t> diff = t;
    diff.resize(std::max(diff.size(), xp.size()), 0);
    diff[0] ^= 2;
    if (poly_deg(diff) >= 0) return false;
    for (auto [q, e] : factorize(m)) {
        (void)e;
        std::vector<std::uint64_t> s = xp;
        for (int i = 0; i < m / (int)q; ++i) s = frob(s);
        std::vector<std::uint64_t> d2 = s;
        d2.resize(std::max(d2.size(), xp.size()), 0);
        d2[0] ^= 2;
        if (poly_deg(d2) < 0) return false;
        auto g = poly_gcd(f, d2);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

}  // namespace

Gf2Field::Gf2Field(int m) : m_(m), words_((m + 63) / 64) {
    check(m >= 1 && m <= 512, "Gf2Field: unsupported degree");
    if (m == 1) {
        mod_ = {3};  // x + 1
        return;
    }
    // least irreducible of degree m: iterate low-part bitmasks
    for (std::uint64_t lowbits = 1;; lowbits += 2) {  // constant term must be 1
        std::vector<std::uint64_t> f(words_ + 1, 0);
        // f = x^m + lowbits (lowbits has degree < m by construction for small counts)
        f[0] = lowbits;
        f[m / 64] |= 1ULL << (m % 64);
        if (is_irreducible(f, m)) {
            mod_ = f;
            return;
        }
        check(lowbits < (1ULL << 20), "Gf2Field: no irreducible found (bug)");
    }
}

Gf2Field::El Gf2Field::one() const {
    El e(words_, 0);
    e[0] = 1;
    return e;
}

Gf2Field::El Gf2Field::x() const {
    El e(words_, 0);
    if (m_ == 1)
        e[0] = 1;  // x == 1 in F_2
    else
        e[0] = 2;
    return e;
}

bool Gf2Field::is_zero(const El& a) const {
    for (auto w : a)
        if (w) return false;
    return true;
}

Gf2Field::El Gf2Field::add(const El& a, const El& b) const {
    El r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] ^= b[i];
    return r;
}

Gf2Field::El Gf2Field::mul(const El& a, const El& b) const {
    auto r = poly_mulmod(a, b, mod_, m_);
    r.resize(words_);
    return r;
}

Gf2Field::El Gf2Field::pow(El base, mpz_class e) const {
    El r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool Gf2Field::has_order(const El& a, std::int64_t order) const {
    if (is_zero(a)) return false;
    El p = pow(a, mpz_class((long)order));
    if (!(p == one())) return false;
    for (auto [q, e] : factorize(order)) {
        (void)e;
        if (pow(a, mpz_class((long)(order / q))) == one()) return false;
    }
    return true;
}

Gf2Field::El Gf2Field::element_of_order(std::int64_t r) const {
    mpz_class group_order = (mpz_class(1) << m_) - 1;
    check(group_order % r == 0, "element_of_order: r does not divide 2^m-1");
    mpz_class cof = group_order / r;
    // deterministic scan over small field elements
    for (std::uint64_t v = 2;; ++v) {
        El a = zero();
        a[0] = v;
        if (m_ < 64 && (v >> m_)) break;
        El b = pow(a, cof);
        if (has_order(b, r)) return b;
        check(v < 1'000'000, "element_of_order: scan exhausted");
    }
    throw computation_error("element_of_order: no element found");
}

Mod2Reducer::Mod2Reducer(std::int64_t odd_order)
    : n_(odd_order),
      field_((int)(odd_order == 1 ? 1 : mult_order(2, odd_order))),
      gen_(field_.zero()) {
    check(odd_order >= 1 && odd_order % 2 == 1, "Mod2Reducer: order must be odd");
    gen_ = odd_order == 1 ? field_.one() : field_.element_of_order(odd_order);
}

Gf2Field::El Mod2Reducer::reduce(const Cyclo& v) const {
    Gf2Field::El acc = field_.zero();
    std::int64_t n = v.conductor();
    std::int64_t a2 = 1;
    std::int64_t m = n;
    while (m % 2 == 0) {
        m /= 2;
        a2 *= 2;
    }
    check(n_ % m == 0, "Mod2Reducer: conductor outside master order");
    for (auto& [e, c] : v.coeffs()) {
        if (mpz_even_p(c.get_mpz_t())) continue;
        // zeta_n^e -> g^{(N/m') * (e mod m')}
        std::int64_t em = e % m;
        (void)a2;
        Gf2Field::El t = field_.pow(gen_, mpz_class((long)(n_ / m)) * (long)em);
        acc = field_.add(acc, t);
    }
    return acc;
}

}  // namespace b32
