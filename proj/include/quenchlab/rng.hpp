#pragma once

// Counter-based random number derivation. Every variate is a pure function
// of the keys that produced it, so parallel sampling needs no shared state
// and regeneration is bit-identical for a fixed build.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace quenchlab {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// (0, 1]; the +1 keeps log() safe at the bottom end.
inline double uniform01(std::uint64_t key) {
  return static_cast<double>((key >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller from two independent keys.
inline double standard_normal(std::uint64_t key0, std::uint64_t key1) {
  const double u1 = uniform01(key0);
  const double u2 = static_cast<double>(key1 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace quenchlab
