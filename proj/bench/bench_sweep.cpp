// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "qmac/experiments.hpp"

namespace {

qmac::SimConfig sweep_base() {
  qmac::SimConfig c;
  c.protocol = qmac::Protocol::TemporalOrdering;
  c.n = 12;
  c.total_cs_slots = 20000;
  c.seed = 1;
  return c;
}

const std::vector<double> kLoads{0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5};

void BM_SweepParallel(benchmark::State& state) {
  const auto base = sweep_base();
  for (auto _ : state) benchmark::DoNotOptimize(qmac::sweep(base, kLoads, 4));
  state.counters["threads"] = qmac::worker_threads();
}

void BM_SweepSerial(benchmark::State& state) {
  const auto base = sweep_base();
  for (auto _ : state) benchmark::DoNotOptimize(qmac::sweep_serial(base, kLoads, 4));
}

void BM_FairnessParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qmac::fairness_experiment(16, 20000, 30, 1));
  state.counters["threads"] = qmac::worker_threads();
}

void BM_FairnessSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qmac::fairness_experiment_serial(16, 20000, 30, 1));
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FairnessParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FairnessSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
