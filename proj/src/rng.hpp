#pragma once

#include <cmath>
#include <cstdint>

namespace hubo {

// Deterministic 64-bit generator used everywhere randomness is needed.
// Generator identity: "splitmix64-v1". The sequence for a given seed is
// fixed for the lifetime of the on-disk formats; instances and solver
// runs are reproducible across platforms because nothing here depends
// on libc rand(), std::mt19937 layout, or distribution internals.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1): 53-bit mantissa, offset by half
  // an ulp so neither endpoint is reachable.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Bound must be nonzero. Uses rejection
  // to avoid modulo bias.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard Cauchy draw (location 0, scale 1) via the inverse CDF
  // tan(pi * (u - 1/2)) on u in (0,1).
  double next_cauchy() { return std::tan(M_PI * (next_open01() - 0.5)); }

  bool next_bool() { return (next_u64() >> 63) != 0; }

 private:
  uint64_t state_;
};

// Derives an independent stream seed from (seed, index). Stream k feeds
// a fresh SplitMix64; the derivation is part of the reproducibility
// contract and must not change between versions.
inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return g.next_u64();
}

}  // namespace hubo
