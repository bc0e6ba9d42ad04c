#include "fasim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fasim/error.hpp"
#include "fasim/spatial.hpp"

namespace fasim {

namespace {

// exp(-t) beyond this is below double resolution of any cdf value.
constexpr double kExpTail = 45.0;

}  // namespace

CorrelationProfile CorrelationProfile::from_values(std::vector<double> mu, double channel_variance,
                                                   std::vector<double> error_variance) {
  if (mu.empty() || mu.size() != error_variance.size())
    throw DomainError("CorrelationProfile: mu and error_variance must be non-empty and equal length");
  if (mu.front() != 0.0) throw DomainError("CorrelationProfile: port 1 must have mu = 0");
  if (!(channel_variance > 0.0)) throw DomainError("CorrelationProfile: channel variance must be > 0");
  CorrelationProfile p;
  p.channel_variance = channel_variance;
  p.sigma_tilde_sq.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(std::abs(mu[i]) <= 1.0)) throw DomainError("CorrelationProfile: |mu| must be <= 1");
    if (!(error_variance[i] >= 0.0)) throw DomainError("CorrelationProfile: negative error variance");
    p.sigma_tilde_sq[i] = channel_variance * (1.0 - mu[i] * mu[i]) + error_variance[i];
    if (!(p.sigma_tilde_sq[i] > 0.0))
      throw DomainError("CorrelationProfile: degenerate port (|mu| = 1 with exact estimation)");
  }
  p.ports.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) p.ports[i] = static_cast<int>(i) + 1;
  p.mu = std::move(mu);
  p.error_variance = std::move(error_variance);
  return p;
}

double autocorrelation(int port, const FaArrayConfig& cfg) {
  if (port < 1 || port > cfg.ports_per_fa)
    throw DomainError("autocorrelation: port " + std::to_string(port) + " out of range");
  if (port == 1) return 0.0;
  return numerics::bessel_j0(2.0 * std::numbers::pi * (port - 1) * cfg.scaling /
                             (cfg.ports_per_fa - 1));
}

double lmmse_error_variance(double pilot, double r, const NetworkConfig& net) {
  const double a = net.path_loss_exponent;
  if (!(a > 2.0)) throw DomainError("path loss exponent must exceed 2 (Campbell integral diverges)");
  if (!(r > 0.0)) throw DomainError("lmmse_error_variance: r must be > 0");
  if (!(pilot >= 0.0)) throw DomainError("lmmse_error_variance: pilot length must be >= 0");
  const double impairment =
      std::pow(r, a) / net.transmit_snr() + 2.0 * std::numbers::pi * net.bs_density * r * r / (a - 2.0);
  return 1.0 / (1.0 + pilot / impairment);
}

EstimationQuality estimation_error_variance(int port, double rho, const FaArrayConfig& cfg,
                                            const FrameBudget& budget, const NetworkConfig& net) {
  const double r = link_distance(port, rho, cfg);
  return {lmmse_error_variance(budget.pilot_per_port, r, net), rho, port};
}

double min_skipped_ports(double target, double rho, int port, const FaArrayConfig& cfg,
                         const FluidParams& fluid, const FrameInputs& frame,
                         const NetworkConfig& net, Forms forms) {
  if (!(target > 0.0 && target < 1.0)) throw DomainError("min_skipped_ports: target must lie in (0, 1)");
  frame.validate();
  const double r = link_distance(port, rho, cfg);
  const double a = net.path_loss_exponent;
  const auto total = std::llround(frame.coherence_bandwidth * frame.coherence_time);
  const double estimation = static_cast<double>(std::llround(frame.estimation_fraction * total));
  const int m = cfg.num_fas;
  const int n = cfg.ports_per_fa;
  const double per_port_switch =
      cfg.scaling * cfg.wavelength * frame.coherence_bandwidth / ((n - 1) * fluid_velocity(fluid));
  const double denom = estimation / (static_cast<double>(m) * n) - per_port_switch;
  if (!(denom > 0.0))
    throw InfeasibleError("min_skipped_ports: switching leaves no pilot budget (L_e/(MN) <= " +
                          std::to_string(per_port_switch) + ")");
  const double interference = forms == Forms::printed
                                  ? mean_interference(r, net)
                                  : std::pow(r, a) * mean_interference(r, net) / net.channel_variance;
  const double numer = std::pow(r, a) / net.transmit_snr() + interference;
  return numer / denom * (1.0 / target - 1.0);
}

CorrelationProfile make_profile(double rho, const FaArrayConfig& cfg, const FrameBudget& budget,
                                const NetworkConfig& net) {
  std::vector<double> mu;
  std::vector<double> err;
  for (const int port : budget.selected_ports) {
    mu.push_back(autocorrelation(port, cfg));
    err.push_back(estimation_error_variance(port, rho, cfg, budget, net).variance);
  }
  auto p = CorrelationProfile::from_values(std::move(mu), net.channel_variance, std::move(err));
  p.ports = budget.selected_ports;
  return p;
}

double joint_cdf(std::span<const double> taus, const CorrelationProfile& profile,
                 const numerics::QuadratureSpec& spec) {
  const std::size_t n = profile.size();
  if (taus.size() != n) throw DomainError("joint_cdf: need one threshold per selected port");
  for (const double t : taus)
    if (!(t >= 0.0) || std::isnan(t)) throw DomainError("joint_cdf: thresholds must be >= 0");
  for (std::size_t j = 1; j < n; ++j)
    if (taus[j] == 0.0) return 0.0;

  const double s1 = profile.sigma_tilde_sq[0];
  const double limit = taus[0] * taus[0] / s1;
  if (limit == 0.0) return 0.0;
  if (n == 1) return -std::expm1(-limit);

  std::vector<double> slope(n);
  std::vector<double> beta(n);
  for (std::size_t j = 1; j < n; ++j) {
    slope[j] = 2.0 * profile.mu[j] * profile.mu[j] * s1 / profile.sigma_tilde_sq[j];
    beta[j] = std::sqrt(2.0 / profile.sigma_tilde_sq[j]) * taus[j];
  }
  auto integrand = [&](double t) {
    double v = std::exp(-t);
    for (std::size_t j = 1; j < n && v > 0.0; ++j)
      v *= 1.0 - numerics::marcum_q1(std::sqrt(slope[j] * t), beta[j]);
    return v;
  };

  const double upper = std::min(limit, kExpTail);
  // The Marcum factors switch regime where their two arguments meet.
  std::vector<double> points{0.0, upper};
  for (std::size_t j = 1; j < n; ++j) {
    if (slope[j] <= 0.0) continue;
    const double cross = beta[j] * beta[j] / slope[j];
    if (cross > 0.0 && cross < upper) points.push_back(cross);
  }
  std::sort(points.begin(), points.end());
  const double v = numerics::integrate_partitioned(integrand, points, spec).value;
  return std::clamp(v, 0.0, 1.0);
}

double joint_pdf(std::span<const double> taus, const CorrelationProfile& profile) {
  const std::size_t n = profile.size();
  if (taus.size() != n) throw DomainError("joint_pdf: need one amplitude per selected port");
  for (const double t : taus)
    if (!(t >= 0.0) || std::isnan(t)) throw DomainError("joint_pdf: amplitudes must be >= 0");
  const double t1 = taus[0];
  double log_v = 0.0;
  double v = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = profile.sigma_tilde_sq[i];
    const double mu = i == 0 ? 0.0 : profile.mu[i];
    const double x = 2.0 * std::abs(mu) * t1 * taus[i] / s;
    const double centred = taus[i] - std::abs(mu) * t1;
    // exp(-(tau^2 + mu^2 t1^2)/s) I0(x) = exp(-(tau - |mu| t1)^2 / s) * e^-x I0(x)
    log_v += -centred * centred / s;
    v *= 2.0 * taus[i] / s * numerics::bessel_i0_scaled(x);
  }
  return v * std::exp(log_v);
}

std::vector<std::vector<std::complex<double>>> sample_correlated_channels(
    Stream& s, const FaArrayConfig& cfg, double channel_variance) {
  std::vector<double> mu(cfg.ports_per_fa);
  for (int i = 1; i <= cfg.ports_per_fa; ++i) mu[i - 1] = autocorrelation(i, cfg);
  std::vector<std::vector<std::complex<double>>> out(cfg.num_fas);
  for (auto& fa : out) {
    fa.resize(cfg.ports_per_fa);
    fa[0] = s.cgauss(channel_variance);
    for (int i = 1; i < cfg.ports_per_fa; ++i)
      fa[i] = std::sqrt(1.0 - mu[i] * mu[i]) * s.cgauss(channel_variance) + mu[i] * fa[0];
  }
  return out;
}

}  // namespace fasim
