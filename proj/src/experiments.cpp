#include "qmac/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "qmac/random.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qmac {

namespace {

// Runs body(i) for i in [0, count). Results are written by index, so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qmac_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void serial_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

using Loop = void (*)(std::size_t, const std::function<void(std::size_t)>&);

struct SweepJob {
  std::size_t load_index;
  int replication;
  SimConfig config;
};

std::vector<SweepJob> plan_sweep(const SimConfig& base, std::span<const double> loads, int replications) {
  if (loads.empty()) throw ConfigError("loads", "at least one load value is required");
  if (replications < 1) throw ConfigError("replications", "must be at least 1");
  std::vector<SweepJob> jobs;
  jobs.reserve(loads.size() * static_cast<std::size_t>(replications));
  for (std::size_t li = 0; li < loads.size(); ++li) {
    const double R = loads[li];
    if (!std::isfinite(R) || R < 0.0) throw ConfigError("loads", "load values must be non-negative");
    for (int r = 0; r < replications; ++r) {
      SimConfig c = base;
      c.set_offered_load(R);
      c.seed = sweep_seed(base.seed, li, r);
      c.trace_cap = 0;
      validate(c);
      jobs.push_back(SweepJob{li, r, std::move(c)});
    }
  }
  return jobs;
}

std::vector<SweepPoint> execute_sweep(const SimConfig& base, std::span<const double> loads, int replications,
                                      Loop loop) {
  const auto jobs = plan_sweep(base, loads, replications);
  std::vector<SweepPoint> points(jobs.size());
  loop(jobs.size(), [&](std::size_t i) {
    const SweepJob& job = jobs[i];
    points[i] = SweepPoint{job.load_index, loads[job.load_index], job.replication, run(job.config).result};
  });
  return points;
}

FairnessResult execute_fairness(int n, std::uint64_t cs_slots, int replications, std::uint64_t seed,
                                const std::vector<int>& blocked, Loop loop) {
  if (replications < 1) throw ConfigError("replications", "must be at least 1");
  SimConfig base;
  base.protocol = Protocol::TemporalOrdering;
  base.n = n;
  base.saturated = true;
  base.total_cs_slots = cs_slots;
  base.blocked_stations = blocked;
  base.seed = seed;
  validate(base);
  if (static_cast<int>(blocked.size()) >= n) {
    bool any_open = false;
    for (int j = 1; j <= n && !any_open; ++j) {
      any_open = std::find(blocked.begin(), blocked.end(), j) == blocked.end();
    }
    if (!any_open) throw ConfigError("blocked", "at least one station must be able to transmit");
  }

  FairnessResult out;
  out.n = n;
  out.cs_slots = cs_slots;
  out.seed = seed;
  out.ratios.resize(static_cast<std::size_t>(replications));
  loop(out.ratios.size(), [&](std::size_t r) {
    SimConfig c = base;
    c.seed = derive_seed(seed, r);
    const ExperimentResult res = run(c).result;
    std::vector<double> share(static_cast<std::size_t>(n), 0.0);
    for (const StationStats& s : res.stations) {
      share[static_cast<std::size_t>(s.id - 1)] =
          static_cast<double>(s.successes) / static_cast<double>(res.successes);
    }
    out.ratios[r] = std::move(share);
  });

  for (int j = 0; j < n; ++j) {
    std::vector<double> column;
    column.reserve(out.ratios.size());
    for (const auto& rep : out.ratios) column.push_back(rep[static_cast<std::size_t>(j)]);
    out.per_station.push_back(box_summary(column));
    out.mean_ratio.push_back(out.per_station.back().mean);
  }
  return out;
}

}  // namespace

std::uint64_t sweep_seed(std::uint64_t base, std::size_t load_index, int replication) {
  return derive_seed(derive_seed(base, load_index), static_cast<std::uint64_t>(replication));
}

std::vector<SweepPoint> sweep(const SimConfig& base, std::span<const double> loads, int replications) {
  return execute_sweep(base, loads, replications, &parallel_for);
}

std::vector<SweepPoint> sweep_serial(const SimConfig& base, std::span<const double> loads, int replications) {
  return execute_sweep(base, loads, replications, &serial_for);
}

FairnessResult fairness_experiment(int n, std::uint64_t cs_slots, int replications, std::uint64_t seed,
                                   const std::vector<int>& blocked) {
  return execute_fairness(n, cs_slots, replications, seed, blocked, &parallel_for);
}

FairnessResult fairness_experiment_serial(int n, std::uint64_t cs_slots, int replications, std::uint64_t seed,
                                          const std::vector<int>& blocked) {
  return execute_fairness(n, cs_slots, replications, seed, blocked, &serial_for);
}

int worker_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qmac
