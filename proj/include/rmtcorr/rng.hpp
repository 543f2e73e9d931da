#pragma once

#include <cstdint>

#include "rmtcorr/stats.hpp"

namespace rmtcorr {

// SplitMix64 finalizer. Fully specified arithmetic, so streams are
// bit-reproducible across platforms and compilers.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based uniform generator: value k of stream `seed` is a pure
// function of (seed, k), so any draw is random-access and replicate streams
// can be split by offsetting the seed.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix64(seed)) {}

    // Strictly inside (0, 1); never returns 0 or 1.
    [[nodiscard]] double uniform(std::uint64_t counter) const {
        std::uint64_t bits = mix64(key_ + counter * 0x9e3779b97f4a7c15ull);
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by inverse-CDF transform of the counter stream.
    [[nodiscard]] double normal(std::uint64_t counter) const {
        return stats::inverse_normal_cdf(uniform(counter));
    }

private:
    std::uint64_t key_;
};

// Sequential convenience wrapper over CounterRng.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed), next_(0) {}

    double operator()() { return rng_.normal(next_++); }
    double uniform() { return rng_.uniform(next_++); }

private:
    CounterRng rng_;
    std::uint64_t next_;
};

}  // namespace rmtcorr
