#include "qmac/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qmac {

namespace {

// Knuth's multiplication method is exact but linear in the mean; larger
// means are split into chunks (a sum of independent Poissons is Poisson).
constexpr double kPoissonChunk = 30.0;

std::uint64_t poisson_small(RandomSource& rng, double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double product = rng.uniform01();
  while (product > limit) {
    ++k;
    product *= rng.uniform01();
  }
  return k;
}

}  // namespace

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  if ((bound & (bound - 1)) == 0) {
    return engine_() & (bound - 1);
  }
  // Reject the tail that would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) {
      return x % bound;
    }
  }
}

std::uint64_t RandomSource::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  std::uint64_t total = 0;
  while (mean > kPoissonChunk) {
    total += poisson_small(*this, kPoissonChunk);
    mean -= kPoissonChunk;
  }
  return total + poisson_small(*this, mean);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qmac
