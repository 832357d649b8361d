#pragma once

#include <cstdint>
#include <random>

// Seeded randomness helpers. std::mt19937_64 is pinned by the standard, but
// the std:: distributions are not, so bounded ints and unit doubles are
// produced here from raw generator output to keep results identical across
// toolchains.

namespace tempinf::rng {

/// Uniform double in [0, 1) with 53 bits of precision.
inline double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * unit_double(gen);
}

/// Unbiased uniform integer in [0, bound) via rejection sampling.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound < 2) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = gen();
  while (x >= limit) x = gen();
  return x % bound;
}

/// Deterministic seed derivation (splitmix64 finalizer over the combination).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base ^ (stream + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tempinf::rng
