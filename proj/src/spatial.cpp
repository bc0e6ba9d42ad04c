#include "fasim/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fasim/error.hpp"

namespace fasim {

namespace {

constexpr double kTailFraction = 1e-4;

void require_exponent(double a) {
  if (!(a > 2.0) || !std::isfinite(a))
    throw DomainError("path loss exponent must exceed 2 (Campbell integral diverges otherwise)");
}

}  // namespace

void NetworkConfig::validate() const {
  if (!(bs_density > 0.0) || !std::isfinite(bs_density)) throw DomainError("bs_density must be > 0");
  require_exponent(path_loss_exponent);
  if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w)) throw DomainError("tx_power must be > 0");
  if (!(noise_power_w > 0.0) || !std::isfinite(noise_power_w))
    throw DomainError("noise_power must be > 0");
  if (!(channel_variance > 0.0) || !std::isfinite(channel_variance))
    throw DomainError("channel_variance must be > 0");
}

double sample_serving_distance(Stream& s, double bs_density) {
  if (!(bs_density > 0.0)) throw DomainError("sample_serving_distance: density must be > 0");
  return std::sqrt(s.exponential() / (std::numbers::pi * bs_density));
}

std::vector<double> sample_interferers(Stream& s, double bs_density, double r0, double r_max) {
  if (!(r0 > 0.0) || !(r_max > r0) || !std::isfinite(r_max))
    throw DomainError("sample_interferers: need r_max > r0 > 0");
  const double r0_sq = r0 * r0;
  const double span = r_max * r_max - r0_sq;
  const auto count = s.poisson(bs_density * std::numbers::pi * span);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& r : out) r = std::sqrt(r0_sq + s.uniform() * span);
  return out;
}

std::vector<double> sample_path_gains(Stream& s, double bs_density, double r0, double r_max,
                                      double path_loss_exponent) {
  if (!(r0 > 0.0) || !(r_max > r0) || !std::isfinite(r_max))
    throw DomainError("sample_path_gains: need r_max > r0 > 0");
  const double r0_sq = r0 * r0;
  const double span = r_max * r_max - r0_sq;
  const auto count = s.poisson(bs_density * std::numbers::pi * span);
  std::vector<double> out(static_cast<std::size_t>(count));
  const double half_a = 0.5 * path_loss_exponent;
  if (half_a == 2.0) {
    for (auto& g : out) {
      const double d_sq = r0_sq + s.uniform() * span;
      g = 1.0 / (d_sq * d_sq);
    }
  } else {
    for (auto& g : out) g = std::pow(r0_sq + s.uniform() * span, -half_a);
  }
  return out;
}

double minimum_outer_radius(double r0, double path_loss_exponent, double tail_fraction) {
  require_exponent(path_loss_exponent);
  return r0 * std::pow(tail_fraction, -1.0 / (path_loss_exponent - 2.0));
}

double default_outer_radius(double r0, const NetworkConfig& net) {
  const double floor_radius = 50.0 / std::sqrt(std::numbers::pi * net.bs_density);
  // Slight margin so the tail check passes after rounding.
  return std::max(floor_radius,
                  minimum_outer_radius(r0, net.path_loss_exponent, kTailFraction) * (1.0 + 1e-9));
}

void check_truncation(double r0, double r_max, double path_loss_exponent) {
  require_exponent(path_loss_exponent);
  if (!(r_max > r0)) throw ConfigError("outer_radius", "must exceed the serving distance");
  const double ratio = std::pow(r_max / r0, 2.0 - path_loss_exponent);
  if (!(ratio < kTailFraction))
    throw ConfigError("outer_radius", "truncated interference tail is " + std::to_string(ratio) +
                                          " of the mean, limit is 1e-4");
}

double mean_interference(double r, const NetworkConfig& net) {
  require_exponent(net.path_loss_exponent);
  if (!(r > 0.0)) throw DomainError("mean_interference: r must be > 0");
  const double a = net.path_loss_exponent;
  return 2.0 * std::numbers::pi * net.bs_density * net.channel_variance * std::pow(r, 2.0 - a) /
         (a - 2.0);
}

double truncated_mean_interference(double r0, double r_max, const NetworkConfig& net) {
  return mean_interference(r0, net) - mean_interference(r_max, net);
}

InterferenceModel gamma_interference_model(double r, const NetworkConfig& net) {
  require_exponent(net.path_loss_exponent);
  if (!(r > 0.0)) throw DomainError("gamma_interference_model: r must be > 0");
  const double a = net.path_loss_exponent;
  const double base = std::numbers::pi * net.bs_density * std::pow(r, 2.0 - a) / (a - 2.0);
  InterferenceModel m;
  m.shape = 2.0 * base * base;
  m.scale = net.channel_variance / base;
  m.mean = m.shape * m.scale;
  m.variance = m.shape * m.scale * m.scale;
  m.r = r;
  return m;
}

double sample_gamma_interference(Stream& s, const InterferenceModel& model) {
  if (!(model.shape > 0.0) || !(model.scale > 0.0))
    throw DomainError("sample_gamma_interference: invalid model");
  return s.gamma(model.shape, model.scale);
}

double sum_interference(Stream& s, const std::vector<double>& path_gains, double channel_variance) {
  double total = 0.0;
  for (const double g : path_gains) total += g * s.exponential();
  return channel_variance * total;
}

}  // namespace fasim
