#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gmin {

// All stochastic parts of the lab draw from a 64-bit Mersenne twister.
// A trial's stream is seeded with splitmix64(master ^ splitmix64(index)), so
// results do not depend on the order in which trials are executed.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index));
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(stream_seed(master_seed, index));
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi] inclusive.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// One standard normal draw scaled by `stddev`; always consumes the stream.
inline double normal(Rng& rng, double stddev) {
    return stddev * std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gmin
