#pragma once

#include <cstdint>
#include <initializer_list>

namespace parley {

/// SplitMix64 output scrambler (the finalizer applied to the advanced state).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic generator used for all simulation choices. Identical seeds
/// give identical streams on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform draw in [0, n), n >= 1, unbiased via rejection of the partial
  /// final interval: discard r when r - (r % n) would overflow past 2^64.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

private:
  std::uint64_t state_;
};

/// Stream seed for a (master seed, index...) tuple. The contract, so other
/// implementations can reproduce batch runs:
///
///   s = master
///   for each part p: s = splitmix64_mix(s ^ splitmix64_mix(p + 0x9E3779B97F4A7C15))
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = master;
  for (std::uint64_t p : parts)
    s = splitmix64_mix(s ^ splitmix64_mix(p + 0x9E3779B97F4A7C15ULL));
  return s;
}

}  // namespace parley
