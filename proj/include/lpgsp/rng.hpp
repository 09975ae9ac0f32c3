#pragma once

#include <cstdint>
#include <random>

namespace lpgsp::rng {

// Named sub-streams. Every random quantity in the library draws from a
// generator derived from (seed, stream, index), so changing how much
// randomness one stage consumes never perturbs another, and per-column /
// per-restart generation is identical whether run sequentially or in
// parallel.
inline constexpr std::uint64_t kGraphStream = 0x67726170686e6f64ULL;
inline constexpr std::uint64_t kExcitationStream = 0x6578636974617469ULL;
inline constexpr std::uint64_t kNoiseStream = 0x6e6f697365737472ULL;
inline constexpr std::uint64_t kKmeansStream = 0x6b6d65616e732b2bULL;
inline constexpr std::uint64_t kAnomalyStream = 0x616e6f6d616c7973ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for sub-stream `stream` of `seed`, optionally split further by
/// `index` (column number, restart number, ...).
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  const std::uint64_t state =
      splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
  return std::mt19937_64(state);
}

}  // namespace lpgsp::rng
