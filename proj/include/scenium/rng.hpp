#pragma once

#include <cmath>
#include <cstdint>

#include "scenium/geom.hpp"

namespace scenium {

// splitmix64, used to expand seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

// xoshiro256++: small, fast and reproducible across platforms.  The standard
// library engines are portable but its distributions are not, so sampling is
// implemented here from raw bits.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) {
            return (v << k) | (v >> (64 - k));
        };
        std::uint64_t* s = state_;
        std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Continuous uniform over [lo, hi].
    double range(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Standard normal via Box-Muller (one value per call, deterministic).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t i = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

    // Child generator with an independent stream.
    Rng fork(std::uint64_t salt) { return Rng(mix_seed(next(), salt)); }

  private:
    std::uint64_t state_[4];
};

}  // namespace scenium
