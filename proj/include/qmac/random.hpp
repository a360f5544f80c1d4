#pragma once

#include <cstdint>
#include <random>

namespace qmac {

/// Seeded pseudo-random bit source standing in for quantum measurement randomness.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fixed by the C++ standard. All derived draws (bounded integers, uniform
/// reals, Poisson counts) are implemented here rather than through the
/// <random> distributions, which are implementation-defined. Together this
/// makes every outcome sequence reproducible across compilers and platforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  bool next_bit() { return (engine_() >> 63) != 0; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Poisson-distributed count with the given mean (>= 0).
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index (splitmix64 finalizer) so that
/// replications and sweep points get decorrelated, reproducible seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qmac
