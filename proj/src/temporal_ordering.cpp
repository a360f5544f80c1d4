#include "qmac/temporal_ordering.hpp"

#include <stdexcept>

#include "qmac/entanglement.hpp"

namespace qmac {

std::vector<DelayAssignment> to_delays_from_permutation(const Permutation& sigma, int slot_counter_i) {
  const int n = sigma.size();
  if (slot_counter_i < 0) {
    throw std::invalid_argument("slot counter must be non-negative");
  }
  std::vector<DelayAssignment> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const int k = sigma.at(j) - 1;
    out.push_back(DelayAssignment{j, k, slot_counter_i, (k + slot_counter_i) % n});
  }
  return out;
}

std::vector<DelayAssignment> to_assign_delays(int n, int slot_counter_i, RandomSource& rng) {
  return to_delays_from_permutation(sample_oracle(n, rng).perm, slot_counter_i);
}

SlotOutcome to_resolve_slot(std::span<const DelayAssignment> assignments, const std::vector<bool>& ready) {
  if (ready.size() != assignments.size()) {
    throw std::invalid_argument("readiness vector must cover every station");
  }
  const DelayAssignment* first = nullptr;
  for (const DelayAssignment& a : assignments) {
    const auto idx = static_cast<std::size_t>(a.station - 1);
    if (idx >= ready.size()) {
      throw std::invalid_argument("delay assignment names an unknown station");
    }
    if (ready[idx] && (first == nullptr || a.delay_units < first->delay_units)) {
      first = &a;
    }
  }
  if (first == nullptr) return SlotOutcome::idle();
  return SlotOutcome::success(first->station);
}

}  // namespace qmac
