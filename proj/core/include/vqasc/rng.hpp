#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace vqasc {

// SplitMix64 (Steele et al.) used to decorrelate per-stream engine seeds.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// Independent engine for (seed, stream). Streams are counters (restart index,
// sample index, ...) so results do not depend on evaluation order or threading.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix{seed ^ 0x6a09e667f3bcc909ull};
    mix.state += stream * 0x9e3779b97f4a7c15ull;
    return std::mt19937_64(mix.next());
}

// Uniform in [0, 1) from the top 53 bits. std::uniform_real_distribution is
// implementation-defined; this keeps outputs identical across toolchains.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform angle in [-pi, pi).
inline double uniform_angle(std::mt19937_64& eng) {
    return -std::numbers::pi + 2.0 * std::numbers::pi * uniform01(eng);
}

// Standard normal via Box-Muller (one value per call, no cached state).
inline double gauss(std::mt19937_64& eng) {
    const double u1 = 1.0 - uniform01(eng);  // (0, 1], keeps log finite
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vqasc
