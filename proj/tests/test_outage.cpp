#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fasim/config.hpp"
#include "fasim/error.hpp"
#include "fasim/outage.hpp"
#include "fasim/rng.hpp"
#include "fasim/spatial.hpp"

using namespace fasim;

namespace {

Scenario reference(const char* text = "") { return to_scenario(parse_config(text)); }

CorrelationProfile common_profile(std::size_t n, double mu, double sigma_tilde_sq) {
  CorrelationProfile p;
  p.channel_variance = 1.0;
  p.mu.assign(n, mu);
  p.mu[0] = 0.0;
  p.error_variance.assign(n, 0.0);
  p.sigma_tilde_sq.assign(n, sigma_tilde_sq);
  for (std::size_t i = 0; i < n; ++i) p.ports.push_back(static_cast<int>(2 * i + 1));
  return p;
}

}  // namespace

TEST(Outage, ThresholdForms) {
  FrameBudget b;
  b.total_uses = 100;
  b.data_uses = 80;
  EXPECT_NEAR(sinr_threshold(1.0, b).threshold, std::exp2(1.0 / 0.8) - 1.0, 1e-15);
  EXPECT_NEAR(sinr_threshold(1.0, b, Forms::printed).threshold, std::exp2(1.0 / 0.2) - 1.0, 1e-12);
  EXPECT_EQ(sinr_threshold(0.0, b).threshold, 0.0);
  EXPECT_THROW(sinr_threshold(-1.0, b), DomainError);
}

TEST(Outage, ThresholdsFollowSinrAlgebra) {
  const auto sc = reference();
  const double rho = 30.0;
  const auto p = make_profile(rho, sc.array, sc.budget, sc.network);
  const double iv[] = {2e-7};
  const auto th = outage_thresholds(rho, iv, sc, p);
  ASSERT_EQ(th.size(), p.size());
  for (std::size_t j = 0; j < th.size(); ++j) {
    const double ra = std::pow(link_distance(p.ports[j], rho, sc.array), 4.0);
    EXPECT_NEAR(th[j], sc.target.threshold * (ra * 2e-7 + p.error_variance[j] + ra / sc.network.transmit_snr()),
                1e-12 * th[j]);
  }
  const double bad[] = {1.0, 2.0};
  EXPECT_THROW(outage_thresholds(rho, bad, sc, p), DomainError);
}

TEST(Outage, ConditionalOutageMonotone) {
  const auto sc = reference("num_fas = 1\nports_per_fa = 4\n");
  double prev = 0.0;
  for (double iv : {0.0, 5e-6, 1e-5, 3e-5}) {
    const double in[] = {iv};
    const double v = conditional_outage(15.0, in, sc);
    EXPECT_GE(v, prev);
    prev = v;
  }
  prev = 0.0;
  for (double rho : {5.0, 10.0, 15.0, 20.0, 30.0}) {
    const double in[] = {0.0};
    const double v = conditional_outage(rho, in, sc);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Outage, CommonGammaMatchesDistanceIntegral) {
  // The Gamma shape is ~1e-16 here, so the law is a point mass at zero and
  // the outage reduces to the distance average of the interference-free value.
  const auto sc = reference("num_fas = 2\nports_per_fa = 5\n");
  const double lambda = sc.network.bs_density;
  auto h = [&](double rho) {
    const double in[] = {0.0};
    return conditional_outage(rho, in, sc);
  };
  const double avg = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double rho) { return h(rho) * 2 * std::numbers::pi * lambda * rho * std::exp(-std::numbers::pi * lambda * rho * rho); },
      0.0, 600.0, 12, 1e-10);
  EXPECT_NEAR(outage_probability(sc), avg * avg, 1e-6);
  AnalyticOptions shared;
  shared.shared_distance = true;
  const double avg_sq = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double rho) { return h(rho) * h(rho) * 2 * std::numbers::pi * lambda * rho * std::exp(-std::numbers::pi * lambda * rho * rho); },
      0.0, 600.0, 12, 1e-10);
  EXPECT_NEAR(outage_probability(sc, shared), avg_sq, 1e-6);
}

TEST(Outage, AnalyticDecreasesWithPower) {
  double prev = 1.0;
  for (double dbm : {0.0, 20.0, 40.0, 60.0}) {
    auto cfg = parse_config("num_fas = 2\nports_per_fa = 5\n");
    cfg.tx_power_dbm = dbm;
    const double v = outage_probability(to_scenario(cfg));
    EXPECT_LE(v, prev + 1e-12);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
}

TEST(Bounds, UncorrelatedCaseCoincides) {
  const std::vector<double> th{0.4, 0.7, 1.1};
  const double s = 0.8;
  const auto b = outage_bounds_from_thresholds(th, 0.0, s, Forms::printed);
  double sum = 0.0;
  for (int j = 1; j < 3; ++j) sum += std::exp(-th[j] * th[j] / s);
  const double x1 = th[0] * th[0] / s;
  const double ref = 1.0 - std::exp(-x1) - (1.0 - std::exp(-x1)) * sum;
  EXPECT_NEAR(b.lower, std::max(ref, 0.0), 1e-15);
  EXPECT_NEAR(b.upper, std::max(ref, 0.0), 1e-15);
}

TEST(Bounds, OrderedAndInRange) {
  Stream s(21, 0);
  for (int k = 0; k < 500; ++k) {
    const double mu = s.uniform();
    const double st = 0.05 + s.uniform();
    std::vector<double> th(1 + k % 4);
    for (auto& t : th) t = 3.0 * s.uniform();
    for (Forms f : {Forms::derived, Forms::printed}) {
      const auto b = outage_bounds_from_thresholds(th, mu, st, f);
      EXPECT_LE(b.lower, b.upper);
      EXPECT_GE(b.lower, 0.0);
      EXPECT_LE(b.upper, 1.0);
    }
  }
}

TEST(Bounds, LowerBoundHoldsAgainstQuadrature) {
  // With the Q1 upper bound and prod(1 - q) >= 1 - sum(q), the lower value is
  // a true lower bound of the joint cdf under a common correlation, as long
  // as the bound on Q1 applies over the whole range: Xi_j >= mu^2 Xi_1.
  Stream s(22, 0);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 3;
    const double mu = 0.95 * s.uniform();
    const double st = (1.0 - mu * mu) + 0.3 * s.uniform();
    std::vector<double> th(n);
    th[0] = 4.0 * s.uniform();
    for (std::size_t j = 1; j < n; ++j) th[j] = mu * mu * th[0] + 4.0 * s.uniform();
    const auto b = outage_bounds_from_thresholds(th, mu, st, Forms::derived);
    const double exact = conditional_outage_from_thresholds(th, common_profile(n, mu, st), Forms::derived);
    EXPECT_LE(b.lower, exact + 1e-9) << "k=" << k;
  }
}

TEST(Bounds, ErrorVarianceAndCommonCorrelation) {
  const auto sc = reference();
  const double rho = 50.0;
  EXPECT_NEAR(bounds_error_variance(rho, sc),
              2 * std::numbers::pi * sc.network.bs_density * 15.0 / 4200000.0 * rho * rho / 2.0, 1e-20);
  double sum = 0.0;
  for (std::size_t j = 1; j < sc.budget.selected_ports.size(); ++j)
    sum += autocorrelation(sc.budget.selected_ports[j], sc.array);
  EXPECT_NEAR(common_correlation(sc), sum / 7.0, 1e-15);
}

TEST(Bounds, AveragedBracketIsOrdered) {
  const auto sc = reference("tx_power_dbm = 60\nports_per_fa = 5\n");
  const auto b = outage_bounds(sc);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_GE(b.lower, 0.0);
  EXPECT_LE(b.upper, 1.0);
}
