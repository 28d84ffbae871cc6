#pragma once

#include <cstdint>
#include <random>

namespace pbench {

// All randomness flows through mt19937_64 plus the fixed-algorithm helpers
// below. std::uniform_int_distribution and friends are implementation-defined
// and would break bit-reproducibility across standard libraries, so they are
// not used anywhere in the library.
using Rng = std::mt19937_64;

// splitmix64; used to spread user seeds and to derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream split: stream `index` under `master` is independent of
// every other index and of the master stream itself.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Uniform integer in [0, bound) by rejection; identical output on every
// platform. bound must be nonzero.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pbench
