#include "qmac/qubit_distribution.hpp"

#include <stdexcept>

#include "qmac/entanglement.hpp"

namespace qmac {

namespace {

void check_stations(int n) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("qubit distribution supports 1..4 stations, got " + std::to_string(n));
  }
}

}  // namespace

std::string TransmitNumber::bits() const {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b) {
    if ((value >> (width - 1 - b)) & 1U) s[static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

DispatchPlan::DispatchPlan(int n) : n_(n) {
  if (n != 3 && n != 4) {
    throw std::invalid_argument("dispatch plans exist for 3 or 4 stations, got " + std::to_string(n));
  }
}

// Qubit j of group g goes to station ((g + j - 2) mod n) + 1, so group g
// skips exactly the station whose missing index is g.
int DispatchPlan::receiver(int group, int qubit) const {
  if (group < 1 || group > groups() || qubit < 1 || qubit > group_size()) {
    throw std::out_of_range("dispatch plan index out of range");
  }
  return (group + qubit - 2) % n_ + 1;
}

int qd_frame_length(int n) {
  check_stations(n);
  static constexpr int kLengths[] = {0, 2, 3, 8, 16};
  return kLengths[n];
}

int qd_slot_for(int n, TransmitNumber tn) {
  check_stations(n);
  return static_cast<int>(tn.value) + (n == 4 ? 1 : 2);
}

std::vector<TransmitNumber> qd_tns_from_outcome(const DispatchPlan& plan, std::span<const int> excited) {
  const int n = plan.stations();
  if (static_cast<int>(excited.size()) != plan.groups()) {
    throw std::invalid_argument("joint outcome must name one excited qubit per group");
  }
  std::vector<TransmitNumber> tns(static_cast<std::size_t>(n), TransmitNumber{0, n});
  for (int station = 1; station <= n; ++station) {
    const int g = plan.missing_index(station);
    if (plan.fill_bit() != 0) tns[static_cast<std::size_t>(station - 1)].value |= 1U << (n - g);
  }
  for (int g = 1; g <= plan.groups(); ++g) {
    const int e = excited[static_cast<std::size_t>(g - 1)];
    if (e < 1 || e > plan.group_size()) {
      throw std::invalid_argument("excited qubit index out of range for group " + std::to_string(g));
    }
    tns[static_cast<std::size_t>(plan.receiver(g, e) - 1)].value |= 1U << (n - g);
  }
  return tns;
}

std::vector<TransmitNumber> qd_assign_tns(int n, RandomSource& rng) {
  check_stations(n);
  if (n == 1) {
    return {TransmitNumber{0, 1}};
  }
  if (n == 2) {
    const BellPairOutcome pair = sample_bell(rng);
    return {TransmitNumber{static_cast<unsigned>(pair.side_a), 1},
            TransmitNumber{static_cast<unsigned>(pair.side_b), 1}};
  }
  const DispatchPlan plan(n);
  std::vector<int> excited(static_cast<std::size_t>(plan.groups()));
  for (int& e : excited) {
    if (n == 3) {
      e = sample_bell(rng).side_a == 1 ? 1 : 2;
    } else {
      e = sample_w(plan.group_size(), rng).excited();
    }
  }
  return qd_tns_from_outcome(plan, excited);
}

std::vector<QdOutcome> qd_enumerate_outcomes(int n) {
  const DispatchPlan plan(n);
  std::vector<QdOutcome> out;
  std::vector<int> excited(static_cast<std::size_t>(plan.groups()), 1);
  for (;;) {
    QdOutcome o;
    o.excited = excited;
    o.tns = qd_tns_from_outcome(plan, excited);
    for (std::size_t i = 0; i < o.tns.size() && !o.collision; ++i) {
      for (std::size_t j = i + 1; j < o.tns.size(); ++j) {
        if (o.tns[i] == o.tns[j]) {
          o.collision = true;
          break;
        }
      }
    }
    out.push_back(std::move(o));
    // Odometer over groups, last group fastest.
    int g = plan.groups() - 1;
    while (g >= 0 && excited[static_cast<std::size_t>(g)] == plan.group_size()) {
      excited[static_cast<std::size_t>(g)] = 1;
      --g;
    }
    if (g < 0) break;
    ++excited[static_cast<std::size_t>(g)];
  }
  return out;
}

std::vector<int> qd_occupancy(int n, std::span<const TransmitNumber> tns) {
  std::vector<int> occupancy(static_cast<std::size_t>(qd_frame_length(n)) + 1, 0);
  for (const TransmitNumber& tn : tns) {
    ++occupancy.at(static_cast<std::size_t>(qd_slot_for(n, tn)));
  }
  return occupancy;
}

std::vector<int> qd_empty_slot_reclaim(int n, std::span<const int> occupancy) {
  const int length = qd_frame_length(n);
  if (static_cast<int>(occupancy.size()) != length + 1) {
    throw std::invalid_argument("occupancy must cover slots 1.." + std::to_string(length));
  }
  std::vector<int> reclaimed;
  for (int s = 2; s <= length; ++s) {
    if (occupancy[static_cast<std::size_t>(s)] == 0) reclaimed.push_back(s);
  }
  return reclaimed;
}

std::vector<SlotOwner> qd_frame_layout(int n) {
  std::vector<SlotOwner> layout(static_cast<std::size_t>(qd_frame_length(n)), SlotOwner::ClientStations);
  layout.front() = SlotOwner::AccessPoint;
  return layout;
}

}  // namespace qmac
