#pragma once

#include <cstdint>

namespace pbsurf {

/// SplitMix64 generator. Used everywhere randomness is needed so that
/// results are bit-identical across platforms and thread counts
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + next_double() * (b - a); }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

/// Seed-splitting rule: stream k of master seed s is an independent Rng.
/// Documented in the README; every module derives sub-streams through this
/// single function so reports are reproducible from the scenario seed alone.
inline Rng derive_rng(std::uint64_t master_seed, std::uint64_t stream) {
  Rng mix(master_seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
  return Rng(mix.next_u64());
}

}  // namespace pbsurf
