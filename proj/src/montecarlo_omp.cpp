#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "fasim/error.hpp"
#include "fasim/montecarlo.hpp"

namespace fasim {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FASIM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ConfigError("FASIM_WORKERS", std::string("expected a positive integer, got '") + env + "'");
  }
  return omp_get_max_threads();
}

namespace {

// Runs body(t) for every trial on `workers` threads. The first exception
// thrown by any trial is rethrown on the calling thread.
template <class Body>
void parallel_trials(std::int64_t n, int workers, Body body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
  for (std::int64_t t = 0; t < n; ++t) {
    try {
      body(t);
    } catch (...) {
#pragma omp critical(fasim_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

OutageEstimate estimate_outage(const TrialPlan& plan, const Scenario& sc,
                               const TrialConditioning& cond) {
  plan.validate();
  const int workers = resolve_workers(plan.workers);
  std::vector<unsigned char> hit(static_cast<std::size_t>(plan.num_trials), 0);
  parallel_trials(plan.num_trials, workers, [&](std::int64_t t) {
    Stream s(plan.seed, static_cast<std::uint64_t>(t));
    hit[static_cast<std::size_t>(t)] = run_trial(s, sc, plan, cond).outage ? 1 : 0;
  });
  std::int64_t outages = 0;
  for (const auto h : hit) outages += h;
  return detail::summarize(outages, plan.num_trials);
}

MseEstimate estimate_lmmse_mse(const TrialPlan& plan, const Scenario& sc, double rho, int port,
                               PilotInterference mode) {
  plan.validate();
  if (!(rho > 0.0)) throw DomainError("estimate_lmmse_mse: rho must be > 0");
  const int workers = resolve_workers(plan.workers);
  std::vector<double> sample(static_cast<std::size_t>(plan.num_trials));
  parallel_trials(plan.num_trials, workers, [&](std::int64_t t) {
    Stream s(plan.seed, static_cast<std::uint64_t>(t));
    sample[static_cast<std::size_t>(t)] =
        detail::pilot_mse_sample(s, sc, rho, port, plan.outer_radius, mode);
  });
  // Serial reduction keeps the result independent of the worker count.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double v : sample) {
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(plan.num_trials);
  MseEstimate e;
  e.trials = plan.num_trials;
  e.mse = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - n * e.mse * e.mse) / (n - 1.0)) : 0.0;
  e.standard_error = std::sqrt(var / n);
  return e;
}

}  // namespace fasim
