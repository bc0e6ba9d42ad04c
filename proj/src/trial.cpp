#include <algorithm>
#include <cmath>
#include <string>

#include "fasim/channel.hpp"
#include "fasim/error.hpp"
#include "fasim/montecarlo.hpp"
#include "fasim/spatial.hpp"

namespace fasim {

void TrialPlan::validate() const {
  if (num_trials < 1) throw DomainError("TrialPlan: num_trials must be >= 1");
  if (!(outer_radius >= 0.0) || !std::isfinite(outer_radius))
    throw DomainError("TrialPlan: outer_radius must be >= 0 (0 selects the default)");
  if (workers < 0) throw DomainError("TrialPlan: workers must be >= 0");
}

namespace detail {

std::complex<double> lmmse_estimate(Stream& s, std::complex<double> g, double r, double pilot,
                                    double interference, const NetworkConfig& net) {
  const double p = net.tx_power_w;
  const double n0 = net.noise_power_w;
  const double var = net.channel_variance;
  const double amp = std::sqrt(pilot * p / std::pow(r, net.path_loss_exponent));
  const std::complex<double> y =
      amp * g + std::sqrt(p * interference) * s.cgauss(1.0) + s.cgauss(n0);
  const double c = amp * var / (amp * amp * var + n0 + p * mean_interference(r, net));
  return c * y;
}

double pilot_mse_sample(Stream& s, const Scenario& sc, double rho, int port, double outer_radius,
                        PilotInterference mode) {
  const auto& net = sc.network;
  const double r = link_distance(port, rho, sc.array);
  const std::complex<double> g = s.cgauss(net.channel_variance);
  double interference = 0.0;
  if (mode == PilotInterference::mean) {
    interference = mean_interference(r, net);
  } else {
    const double r_max = outer_radius > 0.0 ? outer_radius : default_outer_radius(rho, net);
    check_truncation(rho, r_max, net.path_loss_exponent);
    double r_near = r_max;
    if (mode == PilotInterference::near_field) {
      r_near = std::min(10.0 * rho, r_max);
      interference = truncated_mean_interference(r_near, r_max, net);
    }
    if (r_near > rho) {
      const auto gains = sample_path_gains(s, net.bs_density, rho, r_near, net.path_loss_exponent);
      interference += sum_interference(s, gains, net.channel_variance);
    }
  }
  const auto g_hat = lmmse_estimate(s, g, r, sc.budget.pilot_per_port, interference, net);
  return std::norm(g - g_hat);
}

}  // namespace detail

TrialOutcome run_trial(Stream& s, const Scenario& sc, const TrialPlan& plan,
                       const TrialConditioning& cond) {
  const auto& net = sc.network;
  const auto& cfg = sc.array;
  const auto& ports = sc.budget.selected_ports;
  const std::size_t n_sel = ports.size();
  const double a = net.path_loss_exponent;
  const double snr = net.transmit_snr();

  TrialOutcome out;
  out.rho = cond.rho ? *cond.rho : sample_serving_distance(s, net.bs_density);
  const double rho = out.rho;
  if (!(rho > 0.0)) throw DomainError("run_trial: serving distance must be > 0");

  // Interferer field of this coherence block.
  const bool fixed_interference = cond.interference.has_value();
  const bool exact = !fixed_interference && plan.interference == InterferenceSource::exact_field;
  std::vector<double> gains;
  InterferenceModel model;
  if (exact) {
    const double r_max = plan.outer_radius > 0.0 ? plan.outer_radius : default_outer_radius(rho, net);
    check_truncation(rho, r_max, a);
    gains = sample_path_gains(s, net.bs_density, rho, r_max, a);
  } else if (!fixed_interference) {
    model = gamma_interference_model(rho, net);
  }
  auto draw_interference = [&]() {
    if (fixed_interference) return *cond.interference;
    if (exact) return sum_interference(s, gains, net.channel_variance);
    return sample_gamma_interference(s, model);
  };

  std::vector<double> mu(n_sel);
  std::vector<double> r_sel(n_sel);
  std::vector<double> err_var(n_sel);
  for (std::size_t j = 0; j < n_sel; ++j) {
    mu[j] = autocorrelation(ports[j], cfg);
    r_sel[j] = link_distance(ports[j], rho, cfg);
    err_var[j] = lmmse_error_variance(sc.budget.pilot_per_port, r_sel[j], net);
  }

  const auto channels = sample_correlated_channels(s, cfg, net.channel_variance);

  // Estimates of the selected ports, per FA.
  std::vector<std::vector<std::complex<double>>> est(cfg.num_fas,
                                                     std::vector<std::complex<double>>(n_sel));
  out.error_samples.reserve(static_cast<std::size_t>(cfg.num_fas) * n_sel);
  for (int k = 0; k < cfg.num_fas; ++k) {
    const auto& g = channels[k];
    auto& gh = est[k];
    if (plan.faithful_pilot) {
      for (std::size_t j = 0; j < n_sel; ++j)
        gh[j] = detail::lmmse_estimate(s, g[ports[j] - 1], r_sel[j], sc.budget.pilot_per_port,
                                       draw_interference(), net);
    } else if (plan.estimate == EstimateModel::anchored) {
      const auto e1 = s.cgauss(err_var[0]);
      gh[0] = g[0] + e1;
      for (std::size_t j = 1; j < n_sel; ++j)
        gh[j] = g[ports[j] - 1] + s.cgauss(err_var[j]) + mu[j] * e1;
    } else if (plan.estimate == EstimateModel::orthogonal) {
      for (std::size_t j = 0; j < n_sel; ++j) {
        const double shrink = std::max(0.0, 1.0 - err_var[j] / net.channel_variance);
        gh[j] = shrink * g[ports[j] - 1] + s.cgauss(err_var[j] * shrink);
      }
    } else {
      for (std::size_t j = 0; j < n_sel; ++j) gh[j] = g[ports[j] - 1] + s.cgauss(err_var[j]);
    }
    for (std::size_t j = 0; j < n_sel; ++j) out.error_samples.push_back(std::norm(g[ports[j] - 1] - gh[j]));
  }

  // Stage 1: strongest estimated magnitude per FA; ties go to the lower port.
  std::vector<std::size_t> pick(cfg.num_fas, 0);
  out.candidates.resize(cfg.num_fas);
  for (int k = 0; k < cfg.num_fas; ++k) {
    double best = -1.0;
    for (std::size_t j = 0; j < n_sel; ++j) {
      const double m = std::norm(est[k][j]);
      if (m > best) {
        best = m;
        pick[k] = j;
      }
    }
    out.candidates[k] = ports[pick[k]];
  }

  // Stage 2: realized SINR of each candidate; ties go to the lower FA.
  const bool shared = plan.fades == FadeModel::shared;
  const double shared_iv = shared ? draw_interference() : 0.0;
  out.winning_sinr = -1.0;
  for (int k = 0; k < cfg.num_fas; ++k) {
    const std::size_t j = pick[k];
    const double iv = shared ? shared_iv : draw_interference();
    const double gain = snr / std::pow(r_sel[j], a);
    const double err = plan.sinr == SinrModel::realized_error
                           ? std::norm(channels[k][ports[j] - 1] - est[k][j])
                           : err_var[j];
    const double sinr = gain * std::norm(est[k][j]) / (snr * iv + gain * err + 1.0);
    if (sinr > out.winning_sinr) {
      out.winning_sinr = sinr;
      out.winning_fa = k;
    }
  }
  out.outage = out.winning_sinr < sc.target.threshold;
  return out;
}

}  // namespace fasim
