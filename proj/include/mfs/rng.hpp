#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mfs {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
// Used instead of std::uniform_real_distribution, whose draw pattern is
// implementation-defined; this keeps seeded streams bit-identical across
// compilers and platforms.
inline double unit_draw(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform draw in [lo, hi).
inline double range_draw(Rng& rng, double lo, double hi) {
  return lo + unit_draw(rng) * (hi - lo);
}

// SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Sub-seed derivation: successive splitmix64 rounds folding in each label.
// Every seeded component of the toolkit derives child seeds this way, so
// (master seed, labels...) -> stream is a documented pure function.
inline std::uint64_t mix_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label, Rest... rest) {
  return mix_seed(splitmix64(seed ^ splitmix64(label)), rest...);
}

// Fisher-Yates permutation of 0..n-1 with explicit unit draws (stable across
// standard library implementations, unlike std::shuffle).
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    auto j = static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(i));
    if (j >= i) j = i - 1;
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace mfs
