#pragma once

#include <cstdint>

#include "qmac/random.hpp"

namespace qmac {

/// Aggregate slotted-ALOHA attempt process: each slot sees Poisson(G) attempts
/// and succeeds only when exactly one is made.
struct AlohaResult {
  double offered_load_G = 0.0;
  std::uint64_t slots = 0;
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t collision_slots = 0;
  /// successes / attempts (0 when nothing was attempted).
  double success_rate = 0.0;
  /// G * success_rate; estimates G e^-G.
  double normalized_throughput = 0.0;
};

/// Attempts in one slot.
std::uint64_t aloha_slot_attempts(double G, RandomSource& rng);

/// Requires G >= 0 and slots >= 1; throws std::invalid_argument otherwise.
AlohaResult aloha_simulate(double G, std::uint64_t slots, RandomSource& rng);

}  // namespace qmac
