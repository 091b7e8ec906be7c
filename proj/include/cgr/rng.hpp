// SplitMix64 generator. The algorithm is fixed so every derived artifact
// (random cographs, G(n,p) samples, substitution samples) is reproducible
// from its seed alone; see README for the exact derivation rules.
#pragma once

#include <cstdint>

namespace cgr {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, m) by modular reduction; the tiny bias is
  // irrelevant for test-instance generation and keeps outputs portable.
  std::uint64_t below(std::uint64_t m) { return next() % m; }
};

}  // namespace cgr
