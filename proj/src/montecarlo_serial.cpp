#include <cmath>

#include "fasim/montecarlo.hpp"

namespace fasim {

namespace detail {

OutageEstimate summarize(std::int64_t outages, std::int64_t trials) {
  OutageEstimate e;
  e.outages = outages;
  e.trials = trials;
  e.probability = static_cast<double>(outages) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(trials));
  return e;
}

}  // namespace detail

OutageEstimate estimate_outage_serial(const TrialPlan& plan, const Scenario& sc,
                                      const TrialConditioning& cond) {
  plan.validate();
  std::int64_t outages = 0;
  for (std::int64_t t = 0; t < plan.num_trials; ++t) {
    Stream s(plan.seed, static_cast<std::uint64_t>(t));
    if (run_trial(s, sc, plan, cond).outage) ++outages;
  }
  return detail::summarize(outages, plan.num_trials);
}

}  // namespace fasim
