#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "bestad/geo.hpp"

namespace bestad {

// Deterministic random numbers. The standard <random> engines are
// bit-stable across implementations but the distributions are not, so the
// distributions here are written out explicitly. Every artifact that must be
// byte-reproducible (synthetic data, model init, training noise) goes
// through this type.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // splitmix-style warmup so nearby seeds decorrelate
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) {
        // multiply-shift; bias is negligible for the n used here
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (no state cached; two uniforms per draw).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::uint64_t state_;
};

/// Stable 64-bit hash (FNV-1a) for deriving per-entity seeds.
inline std::uint64_t hash64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Per-entity seed derivation: parallel generation over entities cannot
/// change outputs because each entity stream is seeded independently.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view id) {
    std::uint64_t h = hash64(id);
    std::uint64_t z = global_seed ^ (h + 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t n) {
    std::uint64_t z = global_seed ^ (n * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace bestad
