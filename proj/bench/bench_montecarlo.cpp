// Serial vs OpenMP trial throughput on the reference scenario.

#include <benchmark/benchmark.h>

#include "fasim/config.hpp"
#include "fasim/montecarlo.hpp"

namespace {

fasim::Scenario reference() { return fasim::to_scenario(fasim::parse_config("")); }

void BM_Serial(benchmark::State& state) {
  const auto sc = reference();
  fasim::TrialPlan plan;
  plan.num_trials = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(fasim::estimate_outage_serial(plan, sc).outages);
  state.SetItemsProcessed(state.iterations() * plan.num_trials);
}

void BM_Parallel(benchmark::State& state) {
  const auto sc = reference();
  fasim::TrialPlan plan;
  plan.num_trials = state.range(0);
  plan.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fasim::estimate_outage(plan, sc).outages);
  state.SetItemsProcessed(state.iterations() * plan.num_trials);
  state.counters["workers"] = static_cast<double>(plan.workers);
}

// Gamma-model interference skips the field draw; isolates the per-port work.
void BM_SerialGamma(benchmark::State& state) {
  const auto sc = reference();
  fasim::TrialPlan plan;
  plan.num_trials = state.range(0);
  plan.interference = fasim::InterferenceSource::gamma_model;
  for (auto _ : state) benchmark::DoNotOptimize(fasim::estimate_outage_serial(plan, sc).outages);
  state.SetItemsProcessed(state.iterations() * plan.num_trials);
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Args({2000, 1})->Args({2000, 2})->Args({2000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialGamma)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
