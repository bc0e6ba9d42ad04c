#pragma once

#include <span>
#include <vector>

#include "fasim/channel.hpp"
#include "fasim/geometry.hpp"
#include "fasim/network.hpp"
#include "fasim/numerics.hpp"

namespace fasim {

struct RateTarget {
  double rate = 1.0;           // R, bits per channel use
  double threshold = 0.0;      // vartheta
  double data_fraction = 1.0;  // L_t / L_c
};

/// vartheta = 2^(R / f) - 1. `derived` takes f = L_t/L_c (the data share of
/// the block); `printed` takes f = 1 - L_t/L_c.
RateTarget sinr_threshold(double rate, const FrameBudget& budget, Forms forms = Forms::derived);

/// Everything the analytics and the simulator need about one operating point.
struct Scenario {
  NetworkConfig network;
  FaArrayConfig array;
  FluidParams fluid;
  FrameInputs frame;
  FrameBudget budget;
  RateTarget target;
  Forms forms = Forms::derived;
};

/// Validates every block and derives the frame budget and threshold.
Scenario make_scenario(const NetworkConfig& net, const FaArrayConfig& array,
                       const FluidParams& fluid, const FrameInputs& frame, double rate,
                       Forms forms = Forms::derived);

/// Theta_j = vartheta (r_j^a I_j + sigma_e,j^2 + r_j^a / epsilon) over the
/// selected ports. `interference` holds one value shared by all ports or one
/// value per selected port.
std::vector<double> outage_thresholds(double rho, std::span<const double> interference,
                                      const Scenario& sc, const CorrelationProfile& profile);

/// Joint cdf of the selected ports at the SINR thresholds. `derived`
/// evaluates it at tau_j = sqrt(Theta_j), `printed` at tau_j = Theta_j.
double conditional_outage_from_thresholds(std::span<const double> thetas,
                                          const CorrelationProfile& profile, Forms forms,
                                          const numerics::QuadratureSpec& spec = {});

/// Outage of one FA given the serving distance and interference.
double conditional_outage(double rho, std::span<const double> interference, const Scenario& sc,
                          const numerics::QuadratureSpec& spec = {});

struct OutageBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Closed-form bracket of the conditional outage for a common correlation mu
/// and a common effective variance. `thetas[0]` belongs to port 1; the sums
/// run over the remaining entries. Both values are clamped to [0, 1].
OutageBounds outage_bounds_from_thresholds(std::span<const double> thetas, double mu,
                                           double sigma_tilde_sq, Forms forms);

/// Error variance assumed by the bounds: 2 pi lambda (N / L_t) r^2 / (a - 2).
double bounds_error_variance(double rho, const Scenario& sc);

/// Interference-limited bracket (epsilon -> infinity) at a common link
/// distance rho.
OutageBounds conditional_outage_bounds(double rho, std::span<const double> interference,
                                       double common_mu, const Scenario& sc);

/// Mean of mu_j over the selected ports other than port 1 (0 when N' = 1).
double common_correlation(const Scenario& sc);

enum class AnalyticMode {
  common_gamma,    // one interference draw shared by a FA's selected ports
  per_port_gamma,  // the product over selected ports, one draw per port
};

struct AnalyticOptions {
  AnalyticMode mode = AnalyticMode::common_gamma;
  /// Raise the per-FA outage to the M-th power inside the distance
  /// integral (FAs share the serving distance) instead of outside it.
  bool shared_distance = false;
  numerics::QuadratureSpec spec{};
};

/// Unconditioned outage probability over the Poisson field.
double outage_probability(const Scenario& sc, const AnalyticOptions& opt = {});

/// Interference-limited bracket averaged the same way as the common-gamma
/// outage.
OutageBounds outage_bounds(const Scenario& sc, const AnalyticOptions& opt = {});

}  // namespace fasim
