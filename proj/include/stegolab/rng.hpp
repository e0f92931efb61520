#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace stegolab {

/// Seeded generator shared by embedders, traversal and the corpus tools.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here rather than taken from
/// <random>, since the standard distributions are not reproducible across
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Fair coin: true with probability 1/2.
  bool coin() { return (next() >> 63) != 0; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal();

  /// Independent seed for sub-stream `index`, stable across platforms.
  [[nodiscard]] static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace stegolab
