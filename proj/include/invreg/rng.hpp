#pragma once

// Portable, counter-based random numbers.
//
// Every stream is a SplitMix64 sequence whose starting state is derived by
// hashing (seed, key). Sample i of a draw uses key i, so samples can be
// generated in any order or in parallel and still agree bit-for-bit across
// platforms. Normal variates use the Box-Muller transform; the standard
// library distributions are avoided because their output is
// implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace invreg::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives a substream seed from a master seed and a key.
constexpr std::uint64_t hash64(std::uint64_t seed, std::uint64_t key) {
    return mix64(seed ^ mix64(key + 0x9E3779B97F4A7C15ULL));
}

class Stream {
public:
    explicit constexpr Stream(std::uint64_t state) : state_(state) {}
    constexpr Stream(std::uint64_t seed, std::uint64_t key) : state_(hash64(seed, key)) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, n). Uses rejection to avoid modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace invreg::rng
