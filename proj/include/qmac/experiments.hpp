#pragma once

// Multi-run experiments. Individual runs are sequential; sweep points and
// replications are independent and run in parallel (OpenMP when available).
// Each entry point has a *_serial twin that executes the same jobs in order
// on one thread; both must return identical results.

#include <cstdint>
#include <span>
#include <vector>

#include "qmac/sim.hpp"
#include "qmac/stats.hpp"

namespace qmac {

struct SweepPoint {
  std::size_t load_index = 0;
  double load = 0.0;
  int replication = 0;
  ExperimentResult result;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Seed of sweep point (load_index, replication) derived from the base seed.
std::uint64_t sweep_seed(std::uint64_t base, std::size_t load_index, int replication);

/// One run per (load, replication), ordered by load index then replication.
/// For each load R the per-station rate is set so that n * lambda * tau = R.
/// Throws ConfigError("loads", ...) on an empty or negative load list.
std::vector<SweepPoint> sweep(const SimConfig& base, std::span<const double> loads, int replications = 1);
std::vector<SweepPoint> sweep_serial(const SimConfig& base, std::span<const double> loads, int replications = 1);

struct FairnessResult {
  int n = 0;
  std::uint64_t cs_slots = 0;
  std::uint64_t seed = 0;
  /// ratios[r][j-1]: share of successful CS slots won by station j in replication r.
  std::vector<std::vector<double>> ratios;
  std::vector<double> mean_ratio;
  /// Distribution of each station's ratio across replications.
  std::vector<BoxSummary> per_station;

  int replications() const { return static_cast<int>(ratios.size()); }
};

/// Saturated temporal-ordering runs; blocked stations never become ready.
FairnessResult fairness_experiment(int n, std::uint64_t cs_slots, int replications, std::uint64_t seed,
                                   const std::vector<int>& blocked = {});
FairnessResult fairness_experiment_serial(int n, std::uint64_t cs_slots, int replications, std::uint64_t seed,
                                          const std::vector<int>& blocked = {});

/// Number of worker threads the parallel kernels use (1 without OpenMP).
int worker_threads();

}  // namespace qmac
