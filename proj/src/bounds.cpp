#include <algorithm>
#include <cmath>
#include <numbers>

#include "fasim/error.hpp"
#include "fasim/outage.hpp"

namespace fasim {

OutageBounds outage_bounds_from_thresholds(std::span<const double> thetas, double mu,
                                           double sigma_tilde_sq, Forms forms) {
  if (thetas.empty()) throw DomainError("outage bounds: need at least one threshold");
  if (!(sigma_tilde_sq > 0.0)) throw DomainError("outage bounds: variance must be > 0");
  mu = std::abs(mu);
  if (!(mu <= 1.0)) throw DomainError("outage bounds: |mu| must be <= 1");

  auto xi = [&](double theta) {
    if (!(theta >= 0.0)) throw DomainError("outage bounds: thresholds must be >= 0");
    return forms == Forms::printed ? theta * theta / sigma_tilde_sq : theta / sigma_tilde_sq;
  };
  const double c = 1.0 + mu * mu;
  const double xi1 = xi(thetas[0]);
  const double ups_minus = -std::expm1(-xi1 * (1.0 - mu) * (1.0 - mu)) / c;
  const double ups_plus = -std::expm1(-xi1 * (1.0 + mu) * (1.0 + mu)) / c;

  // Coefficient and decay of the erf remainder after integrating the Q1
  // upper bound against exp(-t).
  const double coeff = forms == Forms::printed ? 2.0 * std::numbers::pi * mu * mu / std::pow(c, 1.5)
                                               : 2.0 * std::sqrt(std::numbers::pi) * mu / std::pow(c, 1.5);
  const double decay = forms == Forms::printed ? (2.0 + mu * mu) / c : 1.0 / c;

  double tail_sum = 0.0;
  double erf_sum = 0.0;
  for (std::size_t j = 1; j < thetas.size(); ++j) {
    const double x = xi(thetas[j]);
    tail_sum += std::exp(-x);
    erf_sum += std::sqrt(x) * std::exp(-x * decay);
  }
  const double base = -std::expm1(-xi1);
  const double from_q_upper = base - ups_minus * tail_sum - coeff * erf_sum;
  const double from_q_lower = base - ups_plus * tail_sum;

  OutageBounds b{std::clamp(std::min(from_q_upper, from_q_lower), 0.0, 1.0),
                 std::clamp(std::max(from_q_upper, from_q_lower), 0.0, 1.0)};
  return b;
}

double bounds_error_variance(double rho, const Scenario& sc) {
  const double a = sc.network.path_loss_exponent;
  const double n_over_lt = static_cast<double>(sc.array.ports_per_fa) /
                           static_cast<double>(sc.budget.data_uses);
  return 2.0 * std::numbers::pi * sc.network.bs_density * n_over_lt * rho * rho / (a - 2.0);
}

double common_correlation(const Scenario& sc) {
  const auto& ports = sc.budget.selected_ports;
  if (ports.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 1; j < ports.size(); ++j) sum += autocorrelation(ports[j], sc.array);
  return sum / static_cast<double>(ports.size() - 1);
}

OutageBounds conditional_outage_bounds(double rho, std::span<const double> interference,
                                       double common_mu, const Scenario& sc) {
  if (!(rho > 0.0)) throw DomainError("conditional_outage_bounds: rho must be > 0");
  const std::size_t n = sc.budget.selected_ports.size();
  if (interference.size() != 1 && interference.size() != n)
    throw DomainError("conditional_outage_bounds: need one interference value or one per port");
  const double err = bounds_error_variance(rho, sc);
  const double sigma_tilde_sq = sc.network.channel_variance * (1.0 - common_mu * common_mu) + err;
  const double ra = std::pow(rho, sc.network.path_loss_exponent);
  std::vector<double> thetas(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double iv = interference.size() == 1 ? interference[0] : interference[j];
    if (!(iv >= 0.0)) throw DomainError("conditional_outage_bounds: interference must be >= 0");
    thetas[j] = sc.target.threshold * (ra * iv + err);
  }
  return outage_bounds_from_thresholds(thetas, common_mu, sigma_tilde_sq, sc.forms);
}

}  // namespace fasim
