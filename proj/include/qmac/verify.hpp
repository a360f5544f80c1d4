#pragma once

// Exhaustive checks of the protocol properties that can be settled by
// enumeration rather than sampling.

#include <string>
#include <string_view>
#include <vector>

namespace qmac {

struct CheckReport {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Rank -> code -> permutation -> code -> rank over all n! ranks, plus strict
/// lexical ordering against std::next_permutation. 1 <= n <= 10.
CheckReport verify_lehmer(int n);

/// The eight three-station outcomes reproduce the published table of valid TNs.
CheckReport verify_qd3_table();

/// 81 four-station outcomes, exactly 3 of which collide as two disjoint pairs.
CheckReport verify_qd4_collisions();

/// Empty CS slots per frame: 4 (n=3), 11 (n=4), 13 (n=4 with collision).
CheckReport verify_qd_reclaim();

/// Frame length, qubit count and one-slot-per-station for n = 1..max_n.
CheckReport verify_tfe(int max_n = 8);

std::vector<std::string_view> verify_check_names();

/// Runs one named check or all of them ("all"). lehmer_n is used by the lehmer check.
/// Throws std::invalid_argument on an unknown name.
std::vector<CheckReport> run_verify(std::string_view check, int lehmer_n = 7);

/// The published three-station TN table: rows of (CS1, CS2, CS3) bit strings.
const std::vector<std::vector<std::string>>& qd3_reference_table();

}  // namespace qmac
