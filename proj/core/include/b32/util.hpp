#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace b32 {

// Deterministic RNG used everywhere randomness shows up (search seeds,
// polynomial splitting).  splitmix64: tiny, reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw computation_error(msg);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.  Blocks are
// pre-partitioned so results written by index are deterministic.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
bool is_prime64(std::int64_t n);

// multiplicative order of a modulo n (gcd(a,n)=1)
std::int64_t mult_order(std::int64_t a, std::int64_t n);

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m);

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

}  // namespace b32
