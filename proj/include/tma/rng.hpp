#pragma once

#include <cmath>
#include <cstdint>

namespace tma {

// splitmix64; used both as a standalone mixer for seed derivation and as
// the base generator for the distributions below. Deterministic across
// platforms for a given build.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a child seed from a master seed and a path of indices, so that
// (scenario, wind) streams are independent and order-insensitive.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master ^ (0x2545f4914f6cdd1dULL * (a + 1)) ^ (0x9e3779b97f4a7c15ULL * (b + 1));
    return splitmix64(s);
}

// Small deterministic RNG with the handful of distributions the
// simulation needs. std::mt19937_64 seeding plus hand-rolled transforms
// keeps the draw sequence stable regardless of libstdc++ internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853c49e6748fea9bULL) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in (0, 1]; never returns 0 so log() is safe
    double uniform01() {
        const std::uint64_t u = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(u) + 1.0) * 0x1.0p-53;
    }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    // Exp(rate): mean 1/rate
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    // N(mu, sigma^2) via Box-Muller; one draw consumed per call pair
    double gaussian(double mu, double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return mu + sigma * spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return mu + sigma * r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace tma
