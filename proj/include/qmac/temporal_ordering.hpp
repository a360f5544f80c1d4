#pragma once

// Temporal ordering: before each CS slot the oracle collapses to one
// permutation; station j reads k = sigma_j - 1 from its register and, if it
// has a packet, waits (k + i) mod n delay quanta before sensing the medium,
// where i is the rotating slot counter. The first ready station to reach the
// end of its wait transmits; everyone else senses the carrier and defers.

#include <span>
#include <vector>

#include "qmac/permutation.hpp"
#include "qmac/random.hpp"
#include "qmac/slot.hpp"

namespace qmac {

struct DelayAssignment {
  int station = 0;
  int k = 0;
  int slot_index_i = 0;
  int delay_units = 0;

  friend bool operator==(const DelayAssignment&, const DelayAssignment&) = default;
};

/// Delays implied by a permutation under slot counter i.
std::vector<DelayAssignment> to_delays_from_permutation(const Permutation& sigma, int slot_counter_i);

/// Draws one oracle sample and returns one assignment per station (index j-1 for station j).
std::vector<DelayAssignment> to_assign_delays(int n, int slot_counter_i, RandomSource& rng);

/// ready[j-1] tells whether station j has a packet queued. Never yields a collision.
SlotOutcome to_resolve_slot(std::span<const DelayAssignment> assignments, const std::vector<bool>& ready);

}  // namespace qmac
