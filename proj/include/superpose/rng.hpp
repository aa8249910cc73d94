#pragma once

#include <cstdint>
#include <random>

namespace superpose {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used only to derive
// well-separated 64-bit seeds; the sampling engine is std::mt19937_64.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent substream for one column of a seeded matrix: the engine seed is
// mix64(seed) XOR column, so each column can be generated in any order.
inline std::mt19937_64 column_stream(std::uint64_t seed, std::uint64_t column) {
  return std::mt19937_64(mix64(seed) ^ column);
}

// Seed for trial t of an experiment at parameter value p (e.g. dimension d).
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t p, std::uint64_t t) noexcept {
  return mix64(mix64(seed ^ mix64(p)) + t);
}

}  // namespace superpose
