#include "qmac/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "qmac/aloha.hpp"
#include "qmac/election.hpp"
#include "qmac/permutation.hpp"
#include "qmac/qubit_distribution.hpp"
#include "qmac/random.hpp"
#include "qmac/temporal_ordering.hpp"

namespace qmac {

void SimConfig::set_offered_load(double R) {
  lambda_per_station = R / (static_cast<double>(n) * tau);
}

void validate(const SimConfig& c) {
  if (c.n < 1) {
    throw ConfigError("stations", "must be at least 1, got " + std::to_string(c.n));
  }
  switch (c.protocol) {
    case Protocol::QubitDistribution:
      if (c.n > 4) throw ConfigError("stations", "qubit distribution supports 1..4 stations");
      break;
    case Protocol::TemporalOrdering:
      if (c.n < 2 || c.n > kMaxFactorialN) {
        throw ConfigError("stations", "temporal ordering supports 2.." + std::to_string(kMaxFactorialN) + " stations");
      }
      break;
    case Protocol::TransmitFirstElection:
    case Protocol::Aloha:
      if (c.n > 65536) throw ConfigError("stations", "at most 65536 stations");
      break;
  }
  if (!std::isfinite(c.lambda_per_station) || c.lambda_per_station < 0.0) {
    throw ConfigError("lambda", "must be finite and non-negative");
  }
  if (!std::isfinite(c.tau) || c.tau <= 0.0) {
    throw ConfigError("tau", "must be positive");
  }
  if (!std::isfinite(c.delta) || c.delta < 0.0 || static_cast<double>(c.n) * c.delta >= c.tau) {
    throw ConfigError("delta", "must satisfy 0 <= stations * delta < tau");
  }
  if (c.total_cs_slots == 0) {
    throw ConfigError("slots", "must be at least 1");
  }
  for (int b : c.blocked_stations) {
    if (b < 1 || b > c.n) throw ConfigError("blocked", "station " + std::to_string(b) + " out of range");
  }
}

namespace {

struct Packet {
  double arrival_time = 0.0;
  int station = 0;
};

struct Station {
  std::deque<Packet> queue;
  StationStats stats;
  bool blocked = false;
};

// Keeps a uniform sample of at most `cap` outcomes. Uses its own random
// stream so the simulation draws do not depend on the cap.
class TraceRecorder {
 public:
  TraceRecorder(std::size_t cap, std::uint64_t seed) : cap_(cap), rng_(derive_seed(seed, 0x7ace)) {}

  void record(SlotOutcome outcome) {
    if (cap_ == 0) return;
    if (kept_.size() < cap_) {
      kept_.push_back(std::move(outcome));
    } else {
      const std::uint64_t j = rng_.uniform_below(seen_ + 1);
      if (j < cap_) kept_[static_cast<std::size_t>(j)] = std::move(outcome);
    }
    ++seen_;
  }

  std::vector<SlotOutcome> take() {
    std::sort(kept_.begin(), kept_.end(),
              [](const SlotOutcome& a, const SlotOutcome& b) { return a.slot_index < b.slot_index; });
    return std::move(kept_);
  }

 private:
  std::size_t cap_;
  RandomSource rng_;
  std::vector<SlotOutcome> kept_;
  std::uint64_t seen_ = 0;
};

class Engine {
 public:
  explicit Engine(const SimConfig& config)
      : cfg_(config), rng_(config.seed), trace_(config.trace_cap, config.seed),
        stations_(static_cast<std::size_t>(config.n)) {
    for (int j = 1; j <= cfg_.n; ++j) station(j).stats.id = j;
    for (int b : cfg_.blocked_stations) station(b).blocked = true;
    res_.protocol = cfg_.protocol;
    res_.n = cfg_.n;
    res_.seed = cfg_.seed;
    res_.offered_load_R = cfg_.offered_load();
  }

  RunOutput execute() {
    switch (cfg_.protocol) {
      case Protocol::TemporalOrdering: run_temporal_ordering(); break;
      case Protocol::TransmitFirstElection: run_election(); break;
      case Protocol::QubitDistribution: run_qubit_distribution(); break;
      case Protocol::Aloha: run_aloha(); break;
    }
    finish();
    return RunOutput{std::move(res_), trace_.take()};
  }

 private:
  Station& station(int id) { return stations_[static_cast<std::size_t>(id - 1)]; }

  bool ready(int id) {
    const Station& s = station(id);
    if (s.blocked) return false;
    return cfg_.saturated || !s.queue.empty();
  }

  std::vector<bool> readiness() {
    std::vector<bool> r(stations_.size());
    for (int j = 1; j <= cfg_.n; ++j) r[static_cast<std::size_t>(j - 1)] = ready(j);
    return r;
  }

  void draw_arrivals(double mean) {
    if (cfg_.saturated || mean == 0.0) return;
    const double now = static_cast<double>(res_.cs_slots) * cfg_.tau;
    for (int j = 1; j <= cfg_.n; ++j) {
      Station& s = station(j);
      const std::uint64_t k = rng_.poisson(mean);
      for (std::uint64_t a = 0; a < k; ++a) s.queue.push_back(Packet{now, j});
      s.stats.arrivals += k;
    }
  }

  void attempt(int id) {
    ++station(id).stats.attempts;
    ++res_.attempts;
  }

  void deliver(int id) {
    Station& s = station(id);
    if (!cfg_.saturated) s.queue.pop_front();
    ++s.stats.successes;
    ++res_.successes;
  }

  void emit(SlotKind kind, std::vector<int> who = {}, std::uint32_t attempts = 0) {
    switch (kind) {
      case SlotKind::Idle: ++res_.slot_outcomes_summary.idle; break;
      case SlotKind::Success: ++res_.slot_outcomes_summary.success; break;
      case SlotKind::Collision:
        ++res_.slot_outcomes_summary.collision;
        ++res_.collision_count;
        break;
      case SlotKind::ApReclaimed: ++res_.slot_outcomes_summary.ap_reclaimed; break;
      case SlotKind::ApScheduled: ++res_.slot_outcomes_summary.ap_scheduled; break;
    }
    trace_.record(SlotOutcome{slot_, kind, std::move(who), attempts});
    ++slot_;
  }

  void run_temporal_ordering() {
    const double per_slot = cfg_.lambda_per_station * cfg_.tau;
    int counter = 0;
    for (std::uint64_t s = 0; s < cfg_.total_cs_slots; ++s) {
      draw_arrivals(per_slot);
      emit(SlotKind::ApScheduled);
      const auto delays = to_assign_delays(cfg_.n, counter, rng_);
      const SlotOutcome out = to_resolve_slot(delays, readiness());
      if (out.kind == SlotKind::Success) {
        const int who = out.stations.front();
        attempt(who);
        deliver(who);
        emit(SlotKind::Success, {who}, 1);
      } else {
        emit(SlotKind::Idle);
      }
      counter = (counter + 1) % cfg_.n;
      ++res_.cs_slots;
      ++res_.frames;
    }
  }

  void run_election() {
    const double per_slot = cfg_.lambda_per_station * cfg_.tau;
    const auto layout = tfe_frame_layout(cfg_.n);
    while (res_.cs_slots < cfg_.total_cs_slots) {
      const ElectionCycle cycle = tfe_run_cycle(cfg_.n, rng_);
      int next = 1;
      for (SlotOwner owner : layout) {
        if (owner == SlotOwner::AccessPoint) {
          emit(SlotKind::ApScheduled);
          continue;
        }
        draw_arrivals(per_slot);
        const int who = cycle.order.at(next++);
        if (ready(who)) {
          attempt(who);
          deliver(who);
          emit(SlotKind::Success, {who}, 1);
        } else {
          emit(SlotKind::Idle);
        }
        ++res_.cs_slots;
      }
      ++res_.frames;
    }
  }

  void run_qubit_distribution() {
    const double per_frame = cfg_.lambda_per_station * cfg_.tau * static_cast<double>(cfg_.n);
    const int length = qd_frame_length(cfg_.n);
    while (res_.cs_slots < cfg_.total_cs_slots) {
      draw_arrivals(per_frame);
      const auto tns = qd_assign_tns(cfg_.n, rng_);
      std::vector<std::vector<int>> transmitters(static_cast<std::size_t>(length) + 1);
      std::vector<int> occupancy(static_cast<std::size_t>(length) + 1, 0);
      for (int j = 1; j <= cfg_.n; ++j) {
        if (!ready(j)) continue;
        const auto slot = static_cast<std::size_t>(qd_slot_for(cfg_.n, tns[static_cast<std::size_t>(j - 1)]));
        transmitters[slot].push_back(j);
        ++occupancy[slot];
        attempt(j);
      }
      std::vector<bool> reclaimed(occupancy.size(), false);
      for (int s : qd_empty_slot_reclaim(cfg_.n, occupancy)) reclaimed[static_cast<std::size_t>(s)] = true;
      emit(SlotKind::ApScheduled);
      bool collided = false;
      for (int s = 2; s <= length; ++s) {
        auto& who = transmitters[static_cast<std::size_t>(s)];
        if (reclaimed[static_cast<std::size_t>(s)]) {
          emit(SlotKind::ApReclaimed);
        } else if (who.size() == 1) {
          deliver(who.front());
          emit(SlotKind::Success, std::move(who), 1);
        } else {
          collided = true;
          const auto count = static_cast<std::uint32_t>(who.size());
          emit(SlotKind::Collision, std::move(who), count);
        }
      }
      res_.cs_slots += static_cast<std::uint64_t>(cfg_.n);
      ++res_.frames;
      if (collided) ++res_.frames_with_collision;
    }
  }

  void run_aloha() {
    const double G = cfg_.offered_load();
    for (std::uint64_t s = 0; s < cfg_.total_cs_slots; ++s) {
      const std::uint64_t k = aloha_slot_attempts(G, rng_);
      res_.attempts += k;
      res_.arrivals += k;
      if (k == 0) {
        emit(SlotKind::Idle);
      } else if (k == 1) {
        ++res_.successes;
        emit(SlotKind::Success, {}, 1);
      } else {
        emit(SlotKind::Collision, {}, static_cast<std::uint32_t>(k));
        ++res_.frames_with_collision;
      }
      ++res_.cs_slots;
      ++res_.frames;
    }
  }

  void finish() {
    res_.total_slots = slot_;
    res_.success_rate_S =
        res_.attempts == 0 ? 0.0 : static_cast<double>(res_.successes) / static_cast<double>(res_.attempts);
    if (cfg_.protocol == Protocol::Aloha) {
      res_.effective_load = res_.offered_load_R;
      res_.normalized_throughput_T = res_.offered_load_R * res_.success_rate_S;
      return;
    }
    const double cs = static_cast<double>(res_.cs_slots);
    const double observed = static_cast<double>(res_.attempts) / cs;
    res_.effective_load = cfg_.saturated ? observed : std::min(res_.offered_load_R, observed);
    res_.normalized_throughput_T = res_.effective_load * res_.success_rate_S;
    for (Station& s : stations_) {
      s.stats.backlog = s.queue.size();
      res_.arrivals += s.stats.arrivals;
      res_.per_station_airtime.push_back(static_cast<double>(s.stats.successes) / cs);
      res_.stations.push_back(s.stats);
    }
  }

  const SimConfig& cfg_;
  RandomSource rng_;
  TraceRecorder trace_;
  std::vector<Station> stations_;
  ExperimentResult res_;
  std::uint64_t slot_ = 0;
};

}  // namespace

RunOutput run(const SimConfig& config) {
  validate(config);
  return Engine(config).execute();
}

}  // namespace qmac
