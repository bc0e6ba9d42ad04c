#pragma once

#include <vector>

#include "fasim/network.hpp"
#include "fasim/rng.hpp"

namespace fasim {

/// Moment-matched Gamma law of the interference seen at link distance r.
struct InterferenceModel {
  double shape = 0.0;  // varpi
  double scale = 0.0;  // varrho
  double mean = 0.0;
  double variance = 0.0;
  double r = 0.0;
};

/// Nearest-BS distance, pdf 2 pi lambda rho exp(-pi lambda rho^2).
double sample_serving_distance(Stream& s, double bs_density);

/// Interferer distances of a PPP restricted to the annulus (r0, r_max].
std::vector<double> sample_interferers(Stream& s, double bs_density, double r0, double r_max);

/// Path gains d^(-a) of the same draw as sample_interferers, without the
/// intermediate square roots.
std::vector<double> sample_path_gains(Stream& s, double bs_density, double r0, double r_max,
                                      double path_loss_exponent);

/// Smallest outer radius whose truncated tail is below `tail_fraction` of the
/// mean interference seen from r0.
double minimum_outer_radius(double r0, double path_loss_exponent, double tail_fraction = 1e-4);

/// Default annulus radius: max(50 / sqrt(pi lambda), minimum_outer_radius).
double default_outer_radius(double r0, const NetworkConfig& net);

/// Throws ConfigError unless the tail beyond r_max is below 1e-4 of the mean.
void check_truncation(double r0, double r_max, double path_loss_exponent);

/// 2 pi lambda sigma^2 r^(2-a) / (a-2).
double mean_interference(double r, const NetworkConfig& net);

/// Same as mean_interference, restricted to the annulus (r0, r_max].
double truncated_mean_interference(double r0, double r_max, const NetworkConfig& net);

InterferenceModel gamma_interference_model(double r, const NetworkConfig& net);

double sample_gamma_interference(Stream& s, const InterferenceModel& model);

/// Sum of g_j * |h_j|^2 with fresh unit-mean exponential fades scaled by
/// sigma^2. `path_gains` holds d_j^(-a) for each interferer.
double sum_interference(Stream& s, const std::vector<double>& path_gains, double channel_variance);

}  // namespace fasim
