#include "b32/cyclo.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "b32/util.hpp"

namespace b32 {

namespace {

struct ConductorInfo {
    std::int64_t n = 1;
    // per prime power p^a || n: (p, p^a, bound = (p-1)p^(a-1), crt unit
    // mu = 1 mod p^a, 0 mod n/p^a)
    struct Pp {
        std::int64_t p, pa, bound, mu;
    };
    std::vector<Pp> pps;
};

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    check(r == 1, "inv_mod: not invertible");
    return t < 0 ? t + m : t;
}

const ConductorInfo& conductor_info(std::int64_t n) {
    static std::mutex mu;
    static std::unordered_map<std::int64_t, ConductorInfo> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    ConductorInfo ci;
    ci.n = n;
    for (auto [p, a] : factorize(n)) {
        ConductorInfo::Pp pp;
        pp.p = p;
        pp.pa = 1;
        for (int i = 0; i < a; ++i) pp.pa *= p;
        pp.bound = (p - 1) * (pp.pa / p);
        std::int64_t rest = n / pp.pa;
        // mu = rest * (rest^{-1} mod pa)
        pp.mu = rest == 1 ? 0 : (rest % n) * inv_mod(rest, pp.pa) % n;
        if (n == pp.pa) pp.mu = 1 % n;
        ci.pps.push_back(pp);
    }
    return cache.emplace(n, std::move(ci)).first->second;
}

}  // namespace

Cyclo Cyclo::root(std::int64_t n, std::int64_t e) {
    check(n >= 1, "root: conductor must be positive");
    Cyclo v;
    v.n_ = n;
    e %= n;
    if (e < 0) e += n;
    v.c_[e] = 1;
    v.canonicalize();
    v.reduce_conductor();
    return v;
}

mpz_class Cyclo::rational() const {
    check(n_ == 1, "rational(): value is irrational");
    if (c_.empty()) return 0;
    return c_.begin()->second;
}

void Cyclo::canonicalize() {
    if (n_ == 1) {
        if (!c_.empty()) {
            mpz_class v = 0;
            for (auto& [e, cv] : c_) v += cv;
            c_.clear();
            if (v != 0) c_[0] = v;
        }
        return;
    }
    const ConductorInfo& ci = conductor_info(n_);
    for (const auto& pp : ci.pps) {
        // rewrite every term whose p-coordinate falls outside the basis range
        bool dirty = true;
        while (dirty) {
            dirty = false;
            std::map<std::int64_t, mpz_class> next;
            for (auto& [e, cv] : c_) {
                if (cv == 0) continue;
                std::int64_t ep = e % pp.pa;
                if (ep < pp.bound) {
                    next[e] += cv;
                    continue;
                }
                dirty = true;
                std::int64_t r = ep - pp.bound;  // = ep mod p^(a-1)
                std::int64_t step = pp.pa / pp.p;
                for (std::int64_t j = 0; j + 1 < pp.p; ++j) {
                    std::int64_t newp = j * step + r;
                    std::int64_t e2 = (e + (newp - ep) % n_ * (__int128)pp.mu % n_) % n_;
                    if (e2 < 0) e2 += n_;
                    next[e2] -= cv;
                }
            }
            c_.clear();
            for (auto& [e, cv] : next)
                if (cv != 0) c_[e] = cv;
        }
    }
}

void Cyclo::reduce_conductor() {
    bool again = true;
    while (again && n_ > 1) {
        again = false;
        const ConductorInfo ci = conductor_info(n_);  // copy: n_ changes below
        for (const auto& pp : ci.pps) {
            bool member = true;
            for (auto& [e, cv] : c_) {
                (void)cv;
                if ((e % pp.pa) % pp.p != 0) { member = false; break; }
            }
            if (!member) continue;
            // every exponent is divisible by p, so zeta_n^e = zeta_{n/p}^{e/p}
            std::int64_t d = n_ / pp.p;
            std::map<std::int64_t, mpz_class> next;
            for (auto& [e, cv] : c_) next[e / pp.p] += cv;
            n_ = d;
            c_.clear();
            for (auto& [e, cv] : next)
                if (cv != 0) c_[e] = cv;
            canonicalize();
            again = true;
            break;
        }
    }
    if (c_.empty()) n_ = 1;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    Cyclo r;
    std::int64_t l = lcm64(n_, o.n_);
    r.n_ = l;
    for (auto& [e, cv] : c_) r.c_[e * (l / n_)] += cv;
    for (auto& [e, cv] : o.c_) r.c_[e * (l / o.n_)] += cv;
    for (auto it = r.c_.begin(); it != r.c_.end();)
        it = it->second == 0 ? r.c_.erase(it) : std::next(it);
    r.canonicalize();
    r.reduce_conductor();
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& [e, cv] : r.c_) cv = -cv;
    return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    Cyclo r;
    if (c_.empty() || o.c_.empty()) return r;
    std::int64_t l = lcm64(n_, o.n_);
    r.n_ = l;
    std::int64_t s1 = l / n_, s2 = l / o.n_;
    for (auto& [e1, c1] : c_)
        for (auto& [e2, c2] : o.c_) {
            std::int64_t e = (e1 * s1 + e2 * s2) % l;
            r.c_[e] += c1 * c2;
        }
    for (auto it = r.c_.begin(); it != r.c_.end();)
        it = it->second == 0 ? r.c_.erase(it) : std::next(it);
    r.canonicalize();
    r.reduce_conductor();
    return r;
}

Cyclo Cyclo::conj() const { return galois(n_ - 1); }

Cyclo Cyclo::galois(std::int64_t k) const {
    k %= n_;
    if (k < 0) k += n_;
    check(n_ == 1 || gcd64(k, n_) == 1, "galois: k not coprime to conductor");
    Cyclo r;
    r.n_ = n_;
    for (auto& [e, cv] : c_) r.c_[(__int128)e * k % n_] += cv;
    r.canonicalize();
    r.reduce_conductor();
    return r;
}

mpz_class Cyclo::trace_to_q() const {
    // Tr(zeta_n^e) = mu(d) * phi(n)/phi(d), d = n / gcd(n, e)
    mpz_class t = 0;
    for (auto& [e, cv] : c_) {
        std::int64_t d = n_ / gcd64(n_ == 1 ? 1 : e == 0 ? n_ : e, n_);
        if (e == 0) d = 1;
        int mu = 1;
        bool squarefree = true;
        for (auto [p, a] : factorize(d)) {
            if (a > 1) { squarefree = false; break; }
            mu = -mu;
        }
        if (!squarefree) continue;
        t += cv * mu * (euler_phi(n_) / euler_phi(d));
    }
    return t;
}

bool Cyclo::divide_exact(const mpz_class& m, Cyclo& out) const {
    check(m != 0, "divide_exact by zero");
    out.n_ = n_;
    out.c_.clear();
    for (auto& [e, cv] : c_) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cv.get_mpz_t(), m.get_mpz_t());
        if (r != 0) return false;
        out.c_[e] = q;
    }
    out.reduce_conductor();
    return true;
}

Cyclo Cyclo::scaled(const mpz_class& m) const {
    Cyclo r;
    if (m == 0) return r;
    r.n_ = n_;
    for (auto& [e, cv] : c_) r.c_[e] = cv * m;
    return r;
}

int Cyclo::cmp(const Cyclo& o) const {
    if (n_ != o.n_) return n_ < o.n_ ? -1 : 1;
    auto i = c_.begin();
    auto j = o.c_.begin();
    for (; i != c_.end() && j != o.c_.end(); ++i, ++j) {
        if (i->first != j->first) return i->first < j->first ? -1 : 1;
        int s = ::cmp(i->second, j->second);
        if (s != 0) return s < 0 ? -1 : 1;
    }
    if (i != c_.end()) return 1;
    if (j != o.c_.end()) return -1;
    return 0;
}

const std::vector<std::int64_t>& Cyclo::basis_exponents(std::int64_t n) {
    static std::mutex mu;
    static std::unordered_map<std::int64_t, std::vector<std::int64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const ConductorInfo& ci = conductor_info(n);
    std::vector<std::int64_t> basis;
    for (std::int64_t e = 0; e < n; ++e) {
        bool ok = true;
        for (const auto& pp : ci.pps)
            if (e % pp.pa >= pp.bound) { ok = false; break; }
        if (ok) basis.push_back(e);
    }
    check((std::int64_t)basis.size() == euler_phi(n), "basis size != phi(n)");
    return cache.emplace(n, std::move(basis)).first->second;
}

std::vector<mpz_class> Cyclo::coordinates(std::int64_t n) const {
    check(n % n_ == 0, "coordinates: conductor does not divide target");
    Cyclo lifted;
    lifted.n_ = n;
    for (auto& [e, cv] : c_) lifted.c_[e * (n / n_)] = cv;
    lifted.canonicalize();
    const auto& basis = basis_exponents(n);
    std::vector<mpz_class> out(basis.size(), 0);
    std::size_t bi = 0;
    for (auto& [e, cv] : lifted.c_) {
        while (bi < basis.size() && basis[bi] < e) ++bi;
        check(bi < basis.size() && basis[bi] == e, "coordinates: exponent outside basis");
        out[bi] = cv;
    }
    return out;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, cv] : c_) {
        if (!first) os << (cv >= 0 ? "+" : "");
        first = false;
        if (e == 0) {
            os << cv.get_str();
        } else {
            if (cv == -1)
                os << "-";
            else if (cv != 1)
                os << cv.get_str() << "*";
            os << "z" << n_;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace b32
