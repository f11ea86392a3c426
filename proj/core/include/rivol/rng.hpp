#pragma once

#include <cstdint>
#include <cmath>

namespace rivol {

// Deterministic random stream. Uses a fixed xoshiro256++ core with explicit
// Box-Muller normals so that output is bit-identical across platforms and
// standard-library versions (std::normal_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on (0, 1): 53-bit mantissa, never returns 0 or 1.
  double uniform();

  // Standard normal via Box-Muller; draws are consumed in pairs.
  double normal();

  // Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

  // Child stream for (seed, index) pairs, independent of this stream's state.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace rivol
