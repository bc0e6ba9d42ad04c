#include "fasim/outage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "fasim/error.hpp"
#include "fasim/spatial.hpp"

namespace fasim {

namespace {

// exp(-u) for the serving-distance law in u = pi lambda rho^2; past this
// the remaining mass is below 1e-15.
constexpr double kDistanceTail = 36.0;

// E[g(G)] for G ~ Gamma(shape, scale), written as g(0) plus the integral of
// g(G) - g(0) over s = log(G / scale). This stays accurate when the shape is
// tiny and almost all the mass sits at the origin. `floor` is the smallest
// interference level that can move g.
double gamma_expectation(const std::function<double(double)>& g, const InterferenceModel& model,
                         double floor, const numerics::QuadratureSpec& spec) {
  const double g0 = g(0.0);
  const double k = model.shape;
  const double s_lo = std::log(1e-10 * floor / model.scale);
  const double s_hi = std::log(k + 12.0 * std::sqrt(k) + 40.0);
  if (!(s_lo < s_hi)) return g0;
  const double log_norm = -std::lgamma(k);
  auto integrand = [&](double s) {
    const double w = std::exp(k * s - std::exp(s) + log_norm);
    if (w == 0.0) return 0.0;
    return (g(model.scale * std::exp(s)) - g0) * w;
  };
  std::vector<double> points{s_lo, s_hi};
  if (k > 1.0) {
    const double peak = std::log(k);
    const double width = 1.0 / std::sqrt(k);
    for (const double p : {peak - 4.0 * width, peak, peak + 4.0 * width})
      if (p > s_lo && p < s_hi) points.push_back(p);
    std::sort(points.begin(), points.end());
  }
  return g0 + numerics::integrate_partitioned(integrand, points, spec).value;
}

// Integral of h(rho) against the nearest-BS density.
double distance_expectation(const std::function<double(double)>& h, double bs_density,
                            const numerics::QuadratureSpec& spec) {
  auto integrand = [&](double u) {
    return h(std::sqrt(u / (std::numbers::pi * bs_density))) * std::exp(-u);
  };
  const double points[] = {0.0, 1.0, 4.0, 12.0, kDistanceTail};
  return numerics::integrate_partitioned(integrand, points, spec).value;
}

double noise_floor(double rho, const Scenario& sc, double error_variance, bool interference_limited) {
  const double ra = std::pow(rho, sc.network.path_loss_exponent);
  double floor = error_variance / ra + mean_interference(rho, sc.network);
  if (!interference_limited) floor += 1.0 / sc.network.transmit_snr();
  return floor;
}

}  // namespace

RateTarget sinr_threshold(double rate, const FrameBudget& budget, Forms forms) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("target rate must be >= 0");
  if (budget.total_uses <= 0 || budget.data_uses <= 0)
    throw DomainError("sinr_threshold: invalid frame budget");
  RateTarget t;
  t.rate = rate;
  t.data_fraction = budget.data_fraction();
  const double f = forms == Forms::printed ? 1.0 - t.data_fraction : t.data_fraction;
  t.threshold = std::exp2(rate / f) - 1.0;
  return t;
}

Scenario make_scenario(const NetworkConfig& net, const FaArrayConfig& array,
                       const FluidParams& fluid, const FrameInputs& frame, double rate,
                       Forms forms) {
  net.validate();
  Scenario sc;
  sc.network = net;
  sc.array = array;
  sc.fluid = fluid;
  sc.frame = frame;
  sc.budget = build_frame_budget(array, fluid, frame);
  sc.target = sinr_threshold(rate, sc.budget, forms);
  sc.forms = forms;
  return sc;
}

std::vector<double> outage_thresholds(double rho, std::span<const double> interference,
                                      const Scenario& sc, const CorrelationProfile& profile) {
  const std::size_t n = profile.size();
  if (interference.size() != 1 && interference.size() != n)
    throw DomainError("outage_thresholds: need one interference value or one per selected port");
  const double a = sc.network.path_loss_exponent;
  const double inv_snr = 1.0 / sc.network.transmit_snr();
  std::vector<double> thetas(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double iv = interference.size() == 1 ? interference[0] : interference[j];
    if (!(iv >= 0.0)) throw DomainError("outage_thresholds: interference must be >= 0");
    const double ra = std::pow(link_distance(profile.ports[j], rho, sc.array), a);
    thetas[j] = sc.target.threshold * (ra * iv + profile.error_variance[j] + ra * inv_snr);
  }
  return thetas;
}

double conditional_outage_from_thresholds(std::span<const double> thetas,
                                          const CorrelationProfile& profile, Forms forms,
                                          const numerics::QuadratureSpec& spec) {
  std::vector<double> taus(thetas.begin(), thetas.end());
  if (forms == Forms::derived)
    for (auto& t : taus) t = std::sqrt(t);
  return joint_cdf(taus, profile, spec);
}

double conditional_outage(double rho, std::span<const double> interference, const Scenario& sc,
                          const numerics::QuadratureSpec& spec) {
  const auto profile = make_profile(rho, sc.array, sc.budget, sc.network);
  const auto thetas = outage_thresholds(rho, interference, sc, profile);
  return conditional_outage_from_thresholds(thetas, profile, sc.forms, spec);
}

double outage_probability(const Scenario& sc, const AnalyticOptions& opt) {
  opt.spec.validate();
  if (sc.target.threshold == 0.0) return 0.0;
  const int m = sc.array.num_fas;
  const auto& ports = sc.budget.selected_ports;

  // Per-FA outage at distance rho, averaged over the Gamma interference law
  // conditioned on link distance r.
  auto per_fa = [&](double rho, double r) {
    const auto profile = make_profile(rho, sc.array, sc.budget, sc.network);
    const auto model = gamma_interference_model(r, sc.network);
    auto g = [&](double gamma) {
      const double iv[] = {gamma};
      const auto thetas = outage_thresholds(rho, iv, sc, profile);
      return conditional_outage_from_thresholds(thetas, profile, sc.forms, opt.spec);
    };
    return gamma_expectation(g, model, noise_floor(rho, sc, profile.error_variance[0], false),
                             opt.spec);
  };

  if (opt.mode == AnalyticMode::common_gamma) {
    if (opt.shared_distance)
      return std::clamp(distance_expectation([&](double rho) { return std::pow(per_fa(rho, rho), m); },
                                             sc.network.bs_density, opt.spec),
                        0.0, 1.0);
    const double p = distance_expectation([&](double rho) { return per_fa(rho, rho); },
                                          sc.network.bs_density, opt.spec);
    return std::clamp(std::pow(std::clamp(p, 0.0, 1.0), m), 0.0, 1.0);
  }

  if (opt.shared_distance) {
    auto h = [&](double rho) {
      double v = 1.0;
      for (const int port : ports) v *= std::pow(per_fa(rho, link_distance(port, rho, sc.array)), m);
      return v;
    };
    return std::clamp(distance_expectation(h, sc.network.bs_density, opt.spec), 0.0, 1.0);
  }
  double total = 1.0;
  for (const int port : ports) {
    const double p = distance_expectation(
        [&](double rho) { return per_fa(rho, link_distance(port, rho, sc.array)); },
        sc.network.bs_density, opt.spec);
    total *= std::pow(std::clamp(p, 0.0, 1.0), m);
  }
  return total;
}

OutageBounds outage_bounds(const Scenario& sc, const AnalyticOptions& opt) {
  opt.spec.validate();
  if (sc.target.threshold == 0.0) return {};
  const int m = sc.array.num_fas;
  const double mu = common_correlation(sc);

  auto averaged = [&](bool upper) {
    auto per_fa = [&](double rho) {
      const auto model = gamma_interference_model(rho, sc.network);
      auto g = [&](double gamma) {
        const double iv[] = {gamma};
        const auto b = conditional_outage_bounds(rho, iv, mu, sc);
        return upper ? b.upper : b.lower;
      };
      return gamma_expectation(g, model, noise_floor(rho, sc, bounds_error_variance(rho, sc), true),
                               opt.spec);
    };
    if (opt.shared_distance)
      return distance_expectation([&](double rho) { return std::pow(per_fa(rho), m); },
                                  sc.network.bs_density, opt.spec);
    const double p = distance_expectation(per_fa, sc.network.bs_density, opt.spec);
    return std::pow(std::clamp(p, 0.0, 1.0), m);
  };
  OutageBounds out{std::clamp(averaged(false), 0.0, 1.0), std::clamp(averaged(true), 0.0, 1.0)};
  if (out.lower > out.upper) std::swap(out.lower, out.upper);
  return out;
}

}  // namespace fasim
