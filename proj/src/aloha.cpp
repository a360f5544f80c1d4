#include "qmac/aloha.hpp"

#include <cmath>
#include <stdexcept>

namespace qmac {

std::uint64_t aloha_slot_attempts(double G, RandomSource& rng) { return rng.poisson(G); }

AlohaResult aloha_simulate(double G, std::uint64_t slots, RandomSource& rng) {
  if (!(G >= 0.0) || !std::isfinite(G)) {
    throw std::invalid_argument("ALOHA offered load must be finite and non-negative");
  }
  if (slots == 0) {
    throw std::invalid_argument("ALOHA needs at least one slot");
  }
  AlohaResult r;
  r.offered_load_G = G;
  r.slots = slots;
  for (std::uint64_t s = 0; s < slots; ++s) {
    const std::uint64_t k = aloha_slot_attempts(G, rng);
    r.attempts += k;
    if (k == 1) {
      ++r.successes;
    } else if (k > 1) {
      ++r.collision_slots;
    }
  }
  r.success_rate = r.attempts == 0 ? 0.0 : static_cast<double>(r.successes) / static_cast<double>(r.attempts);
  r.normalized_throughput = G * r.success_rate;
  return r;
}

}  // namespace qmac
