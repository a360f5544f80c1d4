#pragma once

// Qubit distribution protocol for one to four client stations.
//
// Each station turns the qubits it measures into a transmission number (TN)
// whose bit g (bit 1 is the most significant) comes from entangled group g.
// The station that receives no qubit of group g writes a fixed fill bit
// there. Three stations share three Bell pairs (fill 0, slot = TN + 2); four
// stations share four W-state triads (fill 1, slot = TN + 1).

#include <span>
#include <string>
#include <vector>

#include "qmac/random.hpp"
#include "qmac/slot.hpp"

namespace qmac {

struct TransmitNumber {
  unsigned value = 0;
  int width = 0;

  /// Binary digits, bit 1 first (e.g. "101").
  std::string bits() const;

  friend bool operator==(const TransmitNumber&, const TransmitNumber&) = default;
};

/// Which station receives qubit j of entangled group g (both 1-based).
class DispatchPlan {
 public:
  /// n must be 3 (Bell pairs) or 4 (W-state triads).
  explicit DispatchPlan(int n);

  int stations() const { return n_; }
  int groups() const { return n_; }
  int group_size() const { return n_ - 1; }
  int fill_bit() const { return n_ == 3 ? 0 : 1; }

  int receiver(int group, int qubit) const;
  /// Group index the station receives nothing from: (i mod n) + 1.
  int missing_index(int station) const { return station % n_ + 1; }

 private:
  int n_;
};

/// Frame length in slots, including the access point slot TS1.
int qd_frame_length(int n);

/// 1-based frame slot a TN maps to.
int qd_slot_for(int n, TransmitNumber tn);

/// Builds TNs from a joint outcome: excited[g-1] is the 1-based position of
/// the qubit of group g that measured 1.
std::vector<TransmitNumber> qd_tns_from_outcome(const DispatchPlan& plan, std::span<const int> excited);

/// Draws the entangled resources for one frame and returns station i's TN at index i-1.
/// Throws std::invalid_argument when n is outside 1..4.
std::vector<TransmitNumber> qd_assign_tns(int n, RandomSource& rng);

struct QdOutcome {
  std::vector<int> excited;
  std::vector<TransmitNumber> tns;
  bool collision = false;
};

/// Every equiprobable joint outcome for n = 3 (8 of them) or n = 4 (81).
std::vector<QdOutcome> qd_enumerate_outcomes(int n);

/// Number of stations transmitting in each slot when every station uses its TN.
/// Index 0 is unused; index s counts transmitters in slot s.
std::vector<int> qd_occupancy(int n, std::span<const TransmitNumber> tns);

/// CS slots (2..frame length) that carried no transmission and are therefore
/// taken back by the access point.
std::vector<int> qd_empty_slot_reclaim(int n, std::span<const int> occupancy);

std::vector<SlotOwner> qd_frame_layout(int n);

}  // namespace qmac
