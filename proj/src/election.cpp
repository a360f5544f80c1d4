#include "qmac/election.hpp"

#include <stdexcept>
#include <string>

#include "qmac/entanglement.hpp"

namespace qmac {

namespace {

void check_stations(int n) {
  if (n < 1) {
    throw std::invalid_argument("transmit-first election needs at least 1 station, got " + std::to_string(n));
  }
}

}  // namespace

ElectionState::ElectionState(int n) {
  check_stations(n);
  remaining_.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) remaining_.push_back(i);
}

std::vector<int> ElectionState::elect(RandomSource& rng) {
  if (remaining_.empty()) {
    throw std::logic_error("election cycle already complete");
  }
  if (remaining_.size() == 1) {
    std::vector<int> granted = std::move(remaining_);
    remaining_.clear();
    return granted;
  }
  const int group = static_cast<int>(remaining_.size());
  const WStateOutcome w = sample_w(group, rng);
  qubits_used_ += group;
  const auto winner = remaining_.begin() + (w.excited() - 1);
  std::vector<int> granted{*winner};
  remaining_.erase(winner);
  if (group == 2) {
    granted.push_back(remaining_.front());
    remaining_.clear();
  }
  return granted;
}

ElectionCycle tfe_run_cycle(int n, RandomSource& rng) {
  ElectionState state(n);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!state.done()) {
    for (int s : state.elect(rng)) order.push_back(s);
  }
  return ElectionCycle{Permutation(std::move(order)), state.qubits_used(), tfe_frame_length(n)};
}

int tfe_frame_length(int n) {
  check_stations(n);
  return n == 1 ? 2 : 2 * n - 1;
}

int tfe_qubits_per_cycle(int n) {
  check_stations(n);
  return n == 1 ? 0 : n * (n + 1) / 2 - 1;
}

std::vector<SlotOwner> tfe_frame_layout(int n) {
  check_stations(n);
  std::vector<SlotOwner> layout;
  if (n == 1) return {SlotOwner::AccessPoint, SlotOwner::ClientStations};
  for (int round = 0; round < n - 1; ++round) {
    layout.push_back(SlotOwner::AccessPoint);
    layout.push_back(SlotOwner::ClientStations);
  }
  layout.push_back(SlotOwner::ClientStations);
  return layout;
}

}  // namespace qmac
