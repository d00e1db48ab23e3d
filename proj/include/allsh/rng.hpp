#pragma once

#include <cstdint>
#include <random>

namespace allsh {

// splitmix64 finalizer; used to derive independent per-item seeds so that
// parallel maps stay reproducible regardless of iteration order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ b);
}

inline std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(derive_seed(a, b) ^ c);
}

// Uniform double in [0,1) from a single hash, no engine state.
inline double hash_to_unit(std::uint64_t h) {
  return static_cast<double>(mix64(h) >> 11) * 0x1.0p-53;
}

using Rng = std::mt19937_64;

}  // namespace allsh
