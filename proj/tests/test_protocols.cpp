#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmac/election.hpp"
#include "qmac/qubit_distribution.hpp"
#include "qmac/temporal_ordering.hpp"
#include "qmac/verify.hpp"

using namespace qmac;

namespace {

std::vector<std::string> bits_of(const std::vector<TransmitNumber>& tns) {
  std::vector<std::string> out;
  for (const auto& tn : tns) out.push_back(tn.bits());
  return out;
}

// Oracle for three stations, written from the published routing:
// CS1 <- q11 (bit 1), q32 (bit 3); CS2 <- q12 (bit 1), q21 (bit 2); CS3 <- q22 (bit 2), q31 (bit 3).
std::set<std::vector<std::string>> three_station_oracle() {
  std::set<std::vector<std::string>> rows;
  for (int q11 = 0; q11 <= 1; ++q11)
    for (int q21 = 0; q21 <= 1; ++q21)
      for (int q31 = 0; q31 <= 1; ++q31) {
        const int q12 = 1 - q11, q22 = 1 - q21, q32 = 1 - q31;
        auto tn = [](int b1, int b2, int b3) { return std::to_string(b1) + std::to_string(b2) + std::to_string(b3); };
        rows.insert({tn(q11, 0, q32), tn(q12, q21, 0), tn(0, q22, q31)});
      }
  return rows;
}

// Oracle for four stations: station i misses triad (i mod 4) + 1 and writes 1
// there; each triad excites exactly one of its three receivers.
struct FourStationCensus {
  int outcomes = 0;
  int collisions = 0;
  bool triple = false;
  bool non_double = false;
};

FourStationCensus four_station_oracle() {
  FourStationCensus c;
  auto missing = [](int i) { return i % 4 + 1; };
  std::vector<std::vector<int>> receivers(5);
  for (int g = 1; g <= 4; ++g)
    for (int i = 1; i <= 4; ++i)
      if (missing(i) != g) receivers[static_cast<std::size_t>(g)].push_back(i);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d)
        for (int e = 0; e < 3; ++e) {
          const int pick[5] = {0, a, b, d, e};
          int tn[5] = {0, 0, 0, 0, 0};
          for (int i = 1; i <= 4; ++i) tn[i] |= 1 << (4 - missing(i));
          for (int g = 1; g <= 4; ++g) tn[receivers[g][static_cast<std::size_t>(pick[g])]] |= 1 << (4 - g);
          ++c.outcomes;
          std::map<int, int> mult;
          for (int i = 1; i <= 4; ++i) ++mult[tn[i]];
          if (mult.size() < 4) {
            ++c.collisions;
            for (auto& [v, m] : mult) c.triple |= m >= 3;
            c.non_double |= !(mult.size() == 2);
          }
        }
  return c;
}

}  // namespace

TEST_CASE("dispatch plans") {
  const DispatchPlan three(3);
  CHECK(three.receiver(1, 1) == 1);
  CHECK(three.receiver(1, 2) == 2);
  CHECK(three.receiver(2, 1) == 2);
  CHECK(three.receiver(2, 2) == 3);
  CHECK(three.receiver(3, 1) == 3);
  CHECK(three.receiver(3, 2) == 1);
  CHECK(three.fill_bit() == 0);

  const DispatchPlan four(4);
  CHECK(four.fill_bit() == 1);
  // CS1 receives q11, q33 and q42.
  CHECK(four.receiver(1, 1) == 1);
  CHECK(four.receiver(3, 3) == 1);
  CHECK(four.receiver(4, 2) == 1);
  for (const DispatchPlan& plan : {three, four}) {
    const int n = plan.stations();
    std::set<int> missing;
    for (int i = 1; i <= n; ++i) {
      CHECK(plan.missing_index(i) == i % n + 1);
      missing.insert(plan.missing_index(i));
    }
    CHECK(static_cast<int>(missing.size()) == n);
    for (int g = 1; g <= plan.groups(); ++g) {
      std::set<int> got;
      for (int j = 1; j <= plan.group_size(); ++j) {
        const int s = plan.receiver(g, j);
        got.insert(s);
        CHECK(plan.missing_index(s) != g);
      }
      CHECK(static_cast<int>(got.size()) == plan.group_size());
    }
  }
  CHECK_THROWS_AS(DispatchPlan(2), std::invalid_argument);
}

TEST_CASE("three-station TNs match the published first row") {
  const DispatchPlan plan(3);
  // q11 = 1, q22 = 1, q32 = 1.
  const std::vector<int> excited{1, 2, 2};
  CHECK(bits_of(qd_tns_from_outcome(plan, excited)) == std::vector<std::string>{"101", "000", "010"});
}

TEST_CASE("three-station enumeration equals the oracle and the table") {
  const auto outcomes = qd_enumerate_outcomes(3);
  REQUIRE(outcomes.size() == 8);
  std::set<std::vector<std::string>> produced;
  for (const auto& o : outcomes) {
    CHECK_FALSE(o.collision);
    std::set<unsigned> distinct;
    for (const auto& tn : o.tns) {
      CHECK(tn.value <= 6);
      distinct.insert(tn.value);
    }
    CHECK(distinct.size() == 3);
    produced.insert(bits_of(o.tns));
  }
  CHECK(produced == three_station_oracle());
  const auto& table = qd3_reference_table();
  CHECK(produced == std::set<std::vector<std::string>>(table.begin(), table.end()));
}

TEST_CASE("four-station census") {
  const FourStationCensus oracle = four_station_oracle();
  CHECK(oracle.outcomes == 81);
  CHECK(oracle.collisions == 3);
  CHECK_FALSE(oracle.triple);
  CHECK_FALSE(oracle.non_double);

  const auto outcomes = qd_enumerate_outcomes(4);
  REQUIRE(outcomes.size() == 81);
  int collisions = 0;
  for (const auto& o : outcomes) {
    std::map<unsigned, int> mult;
    for (const auto& tn : o.tns) {
      CHECK(tn.value >= 1);
      CHECK(tn.value <= 15);
      ++mult[tn.value];
    }
    for (const auto& [v, m] : mult) CHECK(m <= 2);
    if (o.collision) {
      ++collisions;
      CHECK(mult.size() == 2);
      // Colliding pair (i, j): each TN has ones exactly at the two missing positions.
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          if (o.tns[i] == o.tns[j]) {
            const unsigned k = static_cast<unsigned>((i + 1) % 4 + 1), l = static_cast<unsigned>((j + 1) % 4 + 1);
            CHECK(o.tns[i].value == ((1U << (4 - k)) | (1U << (4 - l))));
          }
    } else {
      CHECK(mult.size() == 4);
    }
  }
  CHECK(collisions == oracle.collisions);
}

TEST_CASE("TN to slot mapping") {
  CHECK(qd_slot_for(4, TransmitNumber{0b0001, 4}) == 2);
  CHECK(qd_slot_for(4, TransmitNumber{0b0101, 4}) == 6);
  CHECK(qd_slot_for(3, TransmitNumber{0b000, 3}) == 2);
  CHECK(qd_slot_for(3, TransmitNumber{0b110, 3}) == 8);
  CHECK(qd_frame_length(1) == 2);
  CHECK(qd_frame_length(2) == 3);
  CHECK(qd_frame_length(3) == 8);
  CHECK(qd_frame_length(4) == 16);
  const auto layout = qd_frame_layout(3);
  CHECK(layout.front() == SlotOwner::AccessPoint);
  CHECK(std::count(layout.begin(), layout.end(), SlotOwner::AccessPoint) == 1);
}

TEST_CASE("sampled TN assignment") {
  RandomSource rng(3);
  const auto one = qd_assign_tns(1, rng);
  REQUIRE(one.size() == 1);
  CHECK(qd_slot_for(1, one[0]) == 2);
  for (int i = 0; i < 1000; ++i) {
    const auto two = qd_assign_tns(2, rng);
    CHECK(two[0].value + two[1].value == 1);
    CHECK(qd_slot_for(2, two[0]) != qd_slot_for(2, two[1]));
    const auto three = qd_assign_tns(3, rng);
    CHECK(three[0] != three[1]);
    CHECK(three[1] != three[2]);
    CHECK(three[0] != three[2]);
    for (const auto& tn : three) CHECK(tn.bits() != "111");
  }
  CHECK_THROWS_AS(qd_assign_tns(0, rng), std::invalid_argument);
  CHECK_THROWS_AS(qd_assign_tns(5, rng), std::invalid_argument);
}

TEST_CASE("empty slots are reclaimed by the access point") {
  for (int n : {3, 4}) {
    for (const auto& o : qd_enumerate_outcomes(n)) {
      const auto reclaimed = qd_empty_slot_reclaim(n, qd_occupancy(n, o.tns));
      const std::size_t want = n == 3 ? 4 : (o.collision ? 13 : 11);
      CHECK(reclaimed.size() == want);
      for (int s : reclaimed) CHECK(s >= 2);
    }
  }
  // Idle stations free their slots too.
  std::vector<int> occupancy(9, 0);
  occupancy[4] = 1;
  CHECK(qd_empty_slot_reclaim(3, occupancy) == std::vector<int>{2, 3, 5, 6, 7, 8});
  CHECK_THROWS_AS(qd_empty_slot_reclaim(3, std::vector<int>(5, 0)), std::invalid_argument);
}

TEST_CASE("transmit-first election cycles") {
  RandomSource rng(21);
  const ElectionCycle four = tfe_run_cycle(4, rng);
  CHECK(four.frame_length == 7);
  CHECK(four.qubits == 9);
  CHECK(tfe_frame_layout(4) == std::vector<SlotOwner>{SlotOwner::AccessPoint, SlotOwner::ClientStations,
                                                      SlotOwner::AccessPoint, SlotOwner::ClientStations,
                                                      SlotOwner::AccessPoint, SlotOwner::ClientStations,
                                                      SlotOwner::ClientStations});
  const ElectionCycle one = tfe_run_cycle(1, rng);
  CHECK(one.frame_length == 2);
  CHECK(one.qubits == 0);
  CHECK(one.order == Permutation::identity(1));
  CHECK(tfe_frame_layout(1) == std::vector<SlotOwner>{SlotOwner::AccessPoint, SlotOwner::ClientStations});
  CHECK_THROWS_AS(tfe_run_cycle(0, rng), std::invalid_argument);

  for (int n = 2; n <= 12; ++n) {
    CHECK(tfe_frame_length(n) == 2 * n - 1);
    CHECK(tfe_qubits_per_cycle(n) == n * (n + 1) / 2 - 1);
    const ElectionCycle c = tfe_run_cycle(n, rng);
    CHECK(c.order.size() == n);
    CHECK(c.qubits == tfe_qubits_per_cycle(n));
  }
}

TEST_CASE("election state shrinks by one per round, then by two") {
  RandomSource rng(22);
  ElectionState state(6);
  std::vector<std::size_t> sizes{state.remaining().size()};
  while (!state.done()) {
    const auto before = state.remaining().size();
    const auto granted = state.elect(rng);
    CHECK(granted.size() == (before == 2 ? 2u : 1u));
    sizes.push_back(state.remaining().size());
  }
  CHECK(sizes == std::vector<std::size_t>{6, 5, 4, 3, 2, 0});
  CHECK_THROWS_AS(state.elect(rng), std::logic_error);
}

TEST_CASE("temporal ordering delays") {
  const Permutation id = Permutation::identity(4);
  auto units = [](const std::vector<DelayAssignment>& a) {
    std::vector<int> u;
    for (const auto& d : a) u.push_back(d.delay_units);
    return u;
  };
  CHECK(units(to_delays_from_permutation(id, 0)) == std::vector<int>{0, 1, 2, 3});
  const auto shifted = to_delays_from_permutation(id, 1);
  CHECK(units(shifted) == std::vector<int>{1, 2, 3, 0});
  CHECK(to_resolve_slot(shifted, std::vector<bool>(4, true)).stations == std::vector<int>{4});

  RandomSource rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(15));
    const int i = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    const auto a = to_assign_delays(n, i, rng);
    std::set<int> distinct;
    for (const auto& d : a) {
      CHECK(d.delay_units == (d.k + i) % n);
      distinct.insert(d.delay_units);
    }
    CHECK(static_cast<int>(distinct.size()) == n);
  }
}

TEST_CASE("temporal ordering slot resolution") {
  const std::vector<DelayAssignment> a{{1, 2, 0, 2}, {2, 0, 0, 0}, {3, 3, 0, 3}, {4, 1, 0, 1}};
  CHECK(to_resolve_slot(a, std::vector<bool>(4, true)) == SlotOutcome::success(2));
  CHECK(to_resolve_slot(a, std::vector<bool>(4, false)).kind == SlotKind::Idle);

  const auto ordered = to_delays_from_permutation(Permutation::identity(4), 0);
  CHECK(to_resolve_slot(ordered, {false, false, true, false}) == SlotOutcome::success(3));
  CHECK_THROWS_AS(to_resolve_slot(ordered, {true}), std::invalid_argument);
}
