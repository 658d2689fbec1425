#pragma once

#include <cstdint>
#include <random>

namespace tvacov {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream key from a root seed and a counter path.
/// Streams depend only on (root, a, b), never on the thread that asks for them,
/// so parallel replications and bootstrap draws are reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix64(mix64(mix64(root) ^ (a + 0x632be59bd9b4e019ULL)) ^ (b + 0x8cb92ba72f3d8dd7ULL));
}

/// Stream tags so that different consumers of one root seed never collide.
namespace stream {
inline constexpr std::uint64_t kData = 0x44415441ULL;       // series generation
inline constexpr std::uint64_t kBootstrap = 0x424f4f54ULL;  // multiplier bootstrap draws
inline constexpr std::uint64_t kOracle = 0x4f52434cULL;     // Monte Carlo oracles
}  // namespace stream

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t key) { return Engine(key); }

}  // namespace tvacov
