#include "qmac/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qmac/election.hpp"
#include "qmac/permutation.hpp"
#include "qmac/qubit_distribution.hpp"
#include "qmac/random.hpp"

namespace qmac {

const std::vector<std::vector<std::string>>& qd3_reference_table() {
  static const std::vector<std::vector<std::string>> table = {
      {"101", "000", "010"}, {"101", "010", "000"}, {"100", "000", "011"}, {"100", "010", "001"},
      {"000", "100", "011"}, {"000", "110", "001"}, {"001", "100", "010"}, {"001", "110", "000"},
  };
  return table;
}

CheckReport verify_lehmer(int n) {
  CheckReport r{"lehmer", false, ""};
  if (n < 1 || n > 10) {
    r.detail = "n must be in 1..10";
    return r;
  }
  const std::uint64_t count = factorial(n);
  std::vector<int> expected(static_cast<std::size_t>(n));
  std::iota(expected.begin(), expected.end(), 1);
  for (std::uint64_t m = 0; m < count; ++m) {
    const LehmerCode code = rank_to_lehmer(Rank{m, n});
    const Permutation perm = decode(code);
    const Rank back = lehmer_to_rank(encode(perm));
    if (back.value != m) {
      r.detail = "rank " + std::to_string(m) + " round-trips to " + std::to_string(back.value);
      return r;
    }
    if (!std::equal(expected.begin(), expected.end(), perm.values().begin())) {
      r.detail = "rank " + std::to_string(m) + " decodes to " + to_string(perm) + " out of lexical order";
      return r;
    }
    std::next_permutation(expected.begin(), expected.end());
  }
  r.passed = true;
  r.detail = "bijection over " + std::to_string(count) + " ranks (n=" + std::to_string(n) + "), lexical order holds";
  return r;
}

CheckReport verify_qd3_table() {
  CheckReport r{"qd3-table", false, ""};
  const auto outcomes = qd_enumerate_outcomes(3);
  std::set<std::vector<std::string>> produced;
  for (const QdOutcome& o : outcomes) {
    if (o.collision) {
      r.detail = "an outcome produced duplicate TNs";
      return r;
    }
    std::vector<std::string> row;
    for (const TransmitNumber& tn : o.tns) {
      if (tn.value > 6) {
        r.detail = "TN " + tn.bits() + " outside 0..6";
        return r;
      }
      row.push_back(tn.bits());
    }
    produced.insert(row);
  }
  const auto& table = qd3_reference_table();
  const std::set<std::vector<std::string>> reference(table.begin(), table.end());
  std::size_t matched = 0;
  for (const auto& row : reference) matched += produced.count(row);
  r.passed = outcomes.size() == 8 && produced == reference;
  r.detail = std::to_string(matched) + "/" + std::to_string(reference.size()) + " rows matched over " +
             std::to_string(outcomes.size()) + " outcomes, all TNs unique, 111 never produced";
  return r;
}

CheckReport verify_qd4_collisions() {
  CheckReport r{"qd4-collisions", false, ""};
  const auto outcomes = qd_enumerate_outcomes(4);
  std::size_t collisions = 0;
  for (const QdOutcome& o : outcomes) {
    std::map<unsigned, int> multiplicity;
    for (const TransmitNumber& tn : o.tns) {
      if (tn.value < 1 || tn.value > 15) {
        r.detail = "TN " + tn.bits() + " outside 1..15";
        return r;
      }
      ++multiplicity[tn.value];
    }
    if (!o.collision) continue;
    ++collisions;
    // Two disjoint equal pairs: exactly two distinct values, each held twice.
    const bool double_pair = multiplicity.size() == 2 && std::all_of(multiplicity.begin(), multiplicity.end(),
                                                                     [](const auto& kv) { return kv.second == 2; });
    if (!double_pair) {
      r.detail = "a collision is not two disjoint equal-TN pairs";
      return r;
    }
  }
  r.passed = outcomes.size() == 81 && collisions == 3;
  r.detail = std::to_string(collisions) + " of " + std::to_string(outcomes.size()) +
             " outcomes collide, each as two disjoint pairs";
  return r;
}

CheckReport verify_qd_reclaim() {
  CheckReport r{"qd-reclaim", true, ""};
  std::map<std::string, std::set<std::size_t>> seen;
  for (int n : {3, 4}) {
    for (const QdOutcome& o : qd_enumerate_outcomes(n)) {
      const auto occupancy = qd_occupancy(n, o.tns);
      const std::size_t reclaimed = qd_empty_slot_reclaim(n, occupancy).size();
      const std::size_t want = n == 3 ? 4 : (o.collision ? 13 : 11);
      if (reclaimed != want) r.passed = false;
      seen[std::to_string(n) + (o.collision ? "c" : "")].insert(reclaimed);
    }
  }
  auto fmt = [&](const std::string& key) {
    std::string s;
    for (std::size_t v : seen[key]) s += (s.empty() ? "" : ",") + std::to_string(v);
    return s;
  };
  r.detail = "reclaimed slots n=3: " + fmt("3") + ", n=4: " + fmt("4") + ", n=4 colliding: " + fmt("4c");
  return r;
}

CheckReport verify_tfe(int max_n) {
  CheckReport r{"tfe", false, ""};
  RandomSource rng(0x7fe);
  for (int n = 1; n <= max_n; ++n) {
    for (int rep = 0; rep < 64; ++rep) {
      const ElectionCycle c = tfe_run_cycle(n, rng);
      const auto layout = tfe_frame_layout(n);
      const auto cs = std::count(layout.begin(), layout.end(), SlotOwner::ClientStations);
      const int want_len = n == 1 ? 2 : 2 * n - 1;
      const int want_qubits = n == 1 ? 0 : n * (n + 1) / 2 - 1;
      if (c.frame_length != want_len || static_cast<int>(layout.size()) != want_len || cs != n ||
          c.qubits != want_qubits || c.order.size() != n) {
        r.detail = "cycle for n=" + std::to_string(n) + " has " + std::to_string(c.frame_length) + " slots and " +
                   std::to_string(c.qubits) + " qubits";
        return r;
      }
    }
  }
  r.passed = true;
  r.detail = "n=1.." + std::to_string(max_n) + ": 2n-1 slots, n(n+1)/2-1 qubits, one slot per station";
  return r;
}

std::vector<std::string_view> verify_check_names() {
  return {"lehmer", "qd3-table", "qd4-collisions", "qd-reclaim", "tfe"};
}

std::vector<CheckReport> run_verify(std::string_view check, int lehmer_n) {
  std::vector<CheckReport> out;
  const bool all = check == "all";
  bool known = all;
  if (all || check == "lehmer") {
    known = true;
    out.push_back(verify_lehmer(lehmer_n));
  }
  if (all || check == "qd3-table") {
    known = true;
    out.push_back(verify_qd3_table());
  }
  if (all || check == "qd4-collisions") {
    known = true;
    out.push_back(verify_qd4_collisions());
  }
  if (all || check == "qd-reclaim") {
    known = true;
    out.push_back(verify_qd_reclaim());
  }
  if (all || check == "tfe") {
    known = true;
    out.push_back(verify_tfe());
  }
  if (!known) throw std::invalid_argument("unknown check '" + std::string(check) + "'");
  return out;
}

}  // namespace qmac
