#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fasim/geometry.hpp"
#include "fasim/network.hpp"
#include "fasim/numerics.hpp"
#include "fasim/rng.hpp"

namespace fasim {

/// Which of two algebraically different readings of a formula to evaluate.
/// `derived` follows the derivation; `printed` reproduces the typeset form.
enum class Forms { derived, printed };

struct EstimationQuality {
  double variance = 0.0;  // sigma_e^2 given rho
  double rho = 0.0;
  int port = 1;
};

/// Per selected port: autocorrelation with port 1 and the variance of the
/// estimated gain conditioned on port 1.
struct CorrelationProfile {
  std::vector<int> ports;
  std::vector<double> mu;
  double channel_variance = 1.0;
  std::vector<double> error_variance;
  std::vector<double> sigma_tilde_sq;

  std::size_t size() const { return mu.size(); }

  /// sigma_tilde_i^2 = sigma^2 (1 - mu_i^2) + error_variance_i. Port 1 must
  /// come first with mu = 0.
  static CorrelationProfile from_values(std::vector<double> mu, double channel_variance,
                                        std::vector<double> error_variance);
};

/// mu_1 = 0, mu_i = J0(2 pi (i-1) kappa / (N-1)).
double autocorrelation(int port, const FaArrayConfig& cfg);

EstimationQuality estimation_error_variance(int port, double rho, const FaArrayConfig& cfg,
                                            const FrameBudget& budget, const NetworkConfig& net);

/// LMMSE error variance for an explicit pilot length and link distance.
double lmmse_error_variance(double pilot, double r, const NetworkConfig& net);

/// Fewest skipped ports that keep the error variance at or below `target`.
/// `derived` scales the interference term as the pilot MSE does (r^a E[I]/sigma^2);
/// `printed` uses the bare mean E[I]. Throws InfeasibleError when the frame
/// cannot host one estimation per port.
double min_skipped_ports(double target, double rho, int port, const FaArrayConfig& cfg,
                         const FluidParams& fluid, const FrameInputs& frame,
                         const NetworkConfig& net, Forms forms = Forms::derived);

CorrelationProfile make_profile(double rho, const FaArrayConfig& cfg, const FrameBudget& budget,
                                const NetworkConfig& net);

/// P(|g_1| <= tau_1, ..., |g_N'| <= tau_N') over the selected ports.
double joint_cdf(std::span<const double> taus, const CorrelationProfile& profile,
                 const numerics::QuadratureSpec& spec = {});

/// Joint amplitude density; port 1 carries the Rayleigh factor and
/// conditions the Rician factors of the others.
double joint_pdf(std::span<const double> taus, const CorrelationProfile& profile);

/// One coherence block of true gains: result[k][i-1] for FA k, port i.
std::vector<std::vector<std::complex<double>>> sample_correlated_channels(
    Stream& s, const FaArrayConfig& cfg, double channel_variance);

}  // namespace fasim
