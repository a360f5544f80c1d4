#pragma once

// Slot-driven simulation engine.
//
// Time is counted in CS transmission opportunities ("CS slots"); access point
// slots carry no client traffic and are excluded from the capacity base.
// Per CS slot every station receives Poisson(lambda * tau) new packets, so
// the aggregate offered load is R = n * lambda * tau packets per CS slot.
//
//   temporal-ordering        one CS slot per AP/CS pair
//   transmit-first-election  n CS slots per cycle of 2n - 1 slots
//   qubit-distribution       n CS slots per frame (one allocation per station)
//   aloha                    every slot is a CS slot, aggregate attempt process
//
// Frame-based protocols run whole frames, so cs_slots may exceed the request
// by less than one frame.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmac/slot.hpp"

namespace qmac {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SimConfig {
  Protocol protocol = Protocol::TemporalOrdering;
  int n = 8;
  /// Packets per second per station.
  double lambda_per_station = 0.0;
  /// Seconds per packet, which is also the slot time.
  double tau = 1e-3;
  /// Temporal-ordering delay quantum in seconds; n * delta < tau.
  double delta = 1e-6;
  std::uint64_t total_cs_slots = 100000;
  std::uint64_t seed = 1;
  /// Every station always has a packet; arrivals are not drawn.
  bool saturated = false;
  /// Stations (1-based) that never become ready.
  std::vector<int> blocked_stations;
  /// Maximum number of slot outcomes kept in the trace (reservoir sampled beyond).
  std::size_t trace_cap = 0;

  /// Aggregate offered load n * lambda * tau.
  double offered_load() const { return static_cast<double>(n) * lambda_per_station * tau; }
  /// Sets lambda so that n * lambda * tau = R.
  void set_offered_load(double R);
};

/// Throws ConfigError naming the first invalid field.
void validate(const SimConfig& config);

struct SlotSummary {
  std::uint64_t idle = 0;
  std::uint64_t success = 0;
  std::uint64_t collision = 0;
  std::uint64_t ap_reclaimed = 0;
  std::uint64_t ap_scheduled = 0;

  std::uint64_t total() const { return idle + success + collision + ap_reclaimed + ap_scheduled; }
  friend bool operator==(const SlotSummary&, const SlotSummary&) = default;
};

struct StationStats {
  int id = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t backlog = 0;

  friend bool operator==(const StationStats&, const StationStats&) = default;
};

struct ExperimentResult {
  Protocol protocol = Protocol::TemporalOrdering;
  int n = 0;
  std::uint64_t seed = 0;
  /// Configured aggregate load n * lambda * tau (Erlangs over CS-slot capacity).
  double offered_load_R = 0.0;
  /// Offered load capped by the observed channel usage (attempts per CS slot);
  /// equals R below saturation and the carried load above it. Unused for ALOHA.
  double effective_load = 0.0;
  double success_rate_S = 0.0;
  /// effective_load * S (R * S for ALOHA).
  double normalized_throughput_T = 0.0;
  std::uint64_t cs_slots = 0;
  std::uint64_t total_slots = 0;
  std::uint64_t frames = 0;
  std::uint64_t frames_with_collision = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t collision_count = 0;
  /// successes of station j / cs_slots (empty for ALOHA, which has no station identities).
  std::vector<double> per_station_airtime;
  std::vector<StationStats> stations;
  SlotSummary slot_outcomes_summary;

  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

struct RunOutput {
  ExperimentResult result;
  /// Sorted by slot index; at most config.trace_cap entries.
  std::vector<SlotOutcome> trace;
};

RunOutput run(const SimConfig& config);

}  // namespace qmac
