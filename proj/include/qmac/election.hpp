#pragma once

// Transmit-first election: each round the access point hands a W state to the
// stations that have not transmitted yet; the one measuring 1 takes the next
// CS slot. In the last round (two stations) the 1 goes first and the 0
// follows immediately, without an access point slot in between.

#include <vector>

#include "qmac/permutation.hpp"
#include "qmac/random.hpp"
#include "qmac/slot.hpp"

namespace qmac {

class ElectionState {
 public:
  explicit ElectionState(int n);

  /// Stations (ascending ids) still waiting for a slot in this cycle.
  const std::vector<int>& remaining() const { return remaining_; }
  int qubits_used() const { return qubits_used_; }
  bool done() const { return remaining_.empty(); }

  /// Runs one round and returns the stations granted slots, in slot order:
  /// one station normally, two in the final round, and the lone station
  /// without any qubit when n = 1.
  std::vector<int> elect(RandomSource& rng);

 private:
  std::vector<int> remaining_;
  int qubits_used_ = 0;
};

struct ElectionCycle {
  /// order.at(k) is the station transmitting in the k-th CS slot of the frame.
  Permutation order;
  int qubits = 0;
  int frame_length = 0;
};

/// Requires n >= 1.
ElectionCycle tfe_run_cycle(int n, RandomSource& rng);

/// 2 for n = 1, otherwise 2n - 1.
int tfe_frame_length(int n);

/// n(n+1)/2 - 1 for n >= 2, 0 for n = 1.
int tfe_qubits_per_cycle(int n);

/// AP, CS, AP, CS, ..., AP, CS, CS.
std::vector<SlotOwner> tfe_frame_layout(int n);

}  // namespace qmac
