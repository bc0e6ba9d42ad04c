#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "fasim/outage.hpp"
#include "fasim/rng.hpp"

namespace fasim {

/// How estimated gains relate to the true ones in fast mode.
enum class EstimateModel {
  anchored,    // g1 + e1 anchors the other ports: g_j + e_j + mu_j e1
  orthogonal,  // LMMSE split: g = g_hat + e with e uncorrelated to g_hat
  additive,    // g_hat = g + e, independent per port
};

/// Interferer fades seen by the stage-2 candidates.
enum class FadeModel { independent, shared };

/// Estimation-error term in the SINR denominator.
enum class SinrModel { analytic_error, realized_error };

enum class InterferenceSource { exact_field, gamma_model };

struct TrialPlan {
  std::int64_t num_trials = 100000;
  std::uint64_t seed = 1;
  bool faithful_pilot = false;
  double outer_radius = 0.0;  // 0: default_outer_radius per trial
  EstimateModel estimate = EstimateModel::anchored;
  FadeModel fades = FadeModel::independent;
  SinrModel sinr = SinrModel::analytic_error;
  InterferenceSource interference = InterferenceSource::exact_field;
  int workers = 0;  // 0: FASIM_WORKERS, else all cores

  void validate() const;
};

/// Optional overrides that pin a trial to a fixed operating point.
struct TrialConditioning {
  std::optional<double> rho;
  std::optional<double> interference;  // replaces the field for every port
};

struct TrialOutcome {
  double rho = 0.0;
  std::vector<int> candidates;  // stage-1 port per FA, 1-based
  double winning_sinr = 0.0;
  int winning_fa = 0;
  bool outage = false;
  std::vector<double> error_samples;  // |g - g_hat|^2 per FA and selected port
};

TrialOutcome run_trial(Stream& s, const Scenario& sc, const TrialPlan& plan,
                       const TrialConditioning& cond = {});

struct OutageEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::int64_t outages = 0;
  std::int64_t trials = 0;
};

/// Worker-parallel estimate. Counts are identical for any worker count.
OutageEstimate estimate_outage(const TrialPlan& plan, const Scenario& sc,
                               const TrialConditioning& cond = {});

/// Single-threaded reference with the same per-trial streams.
OutageEstimate estimate_outage_serial(const TrialPlan& plan, const Scenario& sc,
                                      const TrialConditioning& cond = {});

/// Pilot-segment interference: the full truncated field, its mean, or the
/// field sampled out to ten serving distances with the remainder replaced by
/// its mean. The last has the same expected MSE as the full field, since the
/// per-sample error is linear in the interference power.
enum class PilotInterference { exact_field, mean, near_field };

struct MseEstimate {
  double mse = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
};

/// Empirical LMMSE error |g - g_hat|^2 of one port at fixed rho, from the
/// pilot observation y = sqrt(Delta P / r^a) g + interference + noise.
MseEstimate estimate_lmmse_mse(const TrialPlan& plan, const Scenario& sc, double rho, int port,
                               PilotInterference mode = PilotInterference::exact_field);

/// Worker count resolved from the plan, FASIM_WORKERS, or the hardware.
int resolve_workers(int requested);

namespace detail {

/// LMMSE estimate of g from one pilot observation. `interference` is the
/// realized interference power of the pilot segment.
std::complex<double> lmmse_estimate(Stream& s, std::complex<double> g, double r, double pilot,
                                    double interference, const NetworkConfig& net);

OutageEstimate summarize(std::int64_t outages, std::int64_t trials);

double pilot_mse_sample(Stream& s, const Scenario& sc, double rho, int port, double outer_radius,
                        PilotInterference mode);

}  // namespace detail

}  // namespace fasim
