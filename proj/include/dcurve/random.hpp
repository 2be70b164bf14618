#pragma once

#include <cstdint>
#include <random>

namespace dcurve {

// The engine behind every seeded procedure. std::mt19937_64's output
// sequence is fixed by the standard, so streams are reproducible across
// platforms as long as distributions are implemented here or in Boost.
using Engine = std::mt19937_64;

// splitmix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed for an independent stream `stream` under a user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
    return Engine(derive_seed(seed, stream));
}

// Uniform in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

namespace streams {
inline constexpr std::uint64_t synthetic_risk = 0;
inline constexpr std::uint64_t synthetic_outcome = 1;
inline constexpr std::uint64_t first_replicate = 2;
} // namespace streams

} // namespace dcurve
