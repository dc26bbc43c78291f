#pragma once
#include <cmath>
#include <cstdint>

namespace mskt {

// SplitMix64: a splittable 64-bit generator (Steele, Lea, Flood 2014).
// Chosen over std:: engines so that streams are bit-reproducible across
// standard libraries and cheap to split; all distributions below are derived
// from raw bits with fixed arithmetic.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, 1], excluding exact 0 (safe for log).
    double u01_open() {
        double u;
        do { u = u01(); } while (u == 0.0);
        return u;
    }

    /// Exponential with unit rate.
    double expo() { return -std::log(u01_open()); }

    bool bernoulli(double p) { return u01() < p; }

    /// Uniform integer in [0, n). Rejection-sampled, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % n;
    }

    /// Derive an independent stream; stream indices need not be contiguous.
    static std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
        Rng mix(master ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
        return mix.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace mskt
