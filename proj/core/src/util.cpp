#include "b32/util.hpp"

#include <algorithm>
#include <atomic>

namespace b32 {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned t = std::min<unsigned>(threads, (unsigned)n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::vector<std::exception_ptr> errs(t);
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n) break;
                    fn(i);
                }
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = out.size();
        std::int64_t pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
using u128 = unsigned __int128;

std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (std::uint64_t)((u128)a * b % m);
}

std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u(r, b, m);
        b = mulmod_u(b, b, m);
        e >>= 1;
    }
    return r;
}
}  // namespace

bool is_prime64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // deterministic MR bases for 64-bit
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        std::uint64_t x = powmod_u(a % n, (std::uint64_t)d, (std::uint64_t)n);
        if (x == 1 || x == (std::uint64_t)n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u(x, x, (std::uint64_t)n);
            if (x == (std::uint64_t)n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::int64_t mult_order(std::int64_t a, std::int64_t n) {
    if (n == 1) return 1;
    check(gcd64(a, n) == 1, "mult_order: gcd != 1");
    // order divides lambda(n) | phi(n); scan divisors of phi
    std::int64_t phi = euler_phi(n);
    for (std::int64_t d : divisors(phi)) {
        if (powmod(a, d, n) == 1) return d;
    }
    throw computation_error("mult_order: not found");
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    return (std::int64_t)powmod_u((std::uint64_t)((b % m + m) % m), (std::uint64_t)e, (std::uint64_t)m);
}

}  // namespace b32
