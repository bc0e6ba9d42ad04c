#include <gtest/gtest.h>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fasim/channel.hpp"
#include "fasim/error.hpp"

using namespace fasim;
using boost::math::quadrature::gauss_kronrod;

namespace {

double q1(double a, double b) {
  boost::math::non_central_chi_squared_distribution<double> d(2.0, a * a);
  return boost::math::cdf(boost::math::complement(d, b * b));
}

// P(|g1| <= t1, |g2| <= t2) integrated over the amplitude of port 1.
double two_port_cdf(double t1, double t2, double mu, double s1, double s2) {
  auto f = [&](double x) {
    const double rayleigh = 2.0 * x / s1 * std::exp(-x * x / s1);
    return rayleigh * (1.0 - q1(std::sqrt(2.0 / s2) * std::abs(mu) * x, std::sqrt(2.0 / s2) * t2));
  };
  return gauss_kronrod<double, 31>::integrate(f, 0.0, t1, 15, 1e-13);
}

}  // namespace

TEST(Channel, AutocorrelationIsBesselJ0) {
  FaArrayConfig cfg;
  EXPECT_EQ(autocorrelation(1, cfg), 0.0);
  for (int i = 2; i <= cfg.ports_per_fa; ++i) {
    const double arg = 2.0 * std::numbers::pi * (i - 1) * cfg.scaling / (cfg.ports_per_fa - 1);
    EXPECT_NEAR(autocorrelation(i, cfg), boost::math::cyl_bessel_j(0, arg), 1e-14);
  }
  EXPECT_THROW(autocorrelation(16, cfg), DomainError);
}

TEST(Channel, LmmseErrorVarianceClosedForm) {
  NetworkConfig net;
  const double r = 70.0;
  const double imp = std::pow(r, 4) / net.transmit_snr() + 2 * std::numbers::pi * net.bs_density * r * r / 2.0;
  EXPECT_NEAR(lmmse_error_variance(500.0, r, net), 1.0 / (1.0 + 500.0 / imp), 1e-15);
  EXPECT_DOUBLE_EQ(lmmse_error_variance(0.0, r, net), 1.0);
  double prev = 1.0;
  for (double pilot : {1.0, 10.0, 1e3, 1e6}) {
    const double v = lmmse_error_variance(pilot, r, net);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
}

TEST(Channel, MinSkippedPortsShape) {
  FaArrayConfig cfg;
  NetworkConfig net;
  const double rho = 1.0 / std::sqrt(std::numbers::pi * net.bs_density);
  auto nu = [&](double s, Forms f = Forms::derived) {
    return min_skipped_ports(s, rho, 1, cfg, FluidParams{}, FrameInputs{}, net, f);
  };
  EXPECT_NEAR(nu(1.0 - 1e-12), 0.0, 1e-9);
  double prev = nu(0.05);
  double prev_step = -1e300;
  for (double s = 0.1; s < 0.96; s += 0.05) {
    const double v = nu(s);
    EXPECT_LT(v, prev);
    const double step = v - prev;
    EXPECT_GT(step, prev_step);  // convex: steps shrink in magnitude
    prev_step = step;
    prev = v;
  }
  EXPECT_GT(nu(0.2), 2.0 * nu(0.4));
  EXPECT_NE(nu(0.5, Forms::printed), nu(0.5, Forms::derived));
  EXPECT_THROW(nu(1.5), DomainError);
}

TEST(Channel, MinSkippedPortsRoundTripAtReference) {
  FaArrayConfig cfg;
  NetworkConfig net;
  FluidParams fluid;
  FrameInputs frame;
  const double rho = 1.0 / std::sqrt(std::numbers::pi * net.bs_density);
  const double target = 0.5;
  const double nu = min_skipped_ports(target, rho, 1, cfg, fluid, frame, net);
  cfg.skipped_ports = static_cast<int>(std::ceil(nu));
  const auto b = build_frame_budget(cfg, fluid, frame);
  EXPECT_LE(estimation_error_variance(1, rho, cfg, b, net).variance, target);
}

TEST(Channel, SinglePortCdfIsRayleigh) {
  const auto p = CorrelationProfile::from_values({0.0}, 1.0, {0.3});
  const double t = 0.9;
  const double v = joint_cdf(std::vector<double>{t}, p);
  EXPECT_NEAR(v, 1.0 - std::exp(-t * t / 1.3), 1e-15);
}

TEST(Channel, TwoPortCdfMatchesAmplitudeIntegral) {
  for (double mu : {0.2, 0.7, 0.95})
    for (double err : {0.01, 0.3}) {
      const auto p = CorrelationProfile::from_values({0.0, mu}, 1.0, {err, err});
      for (double t1 : {0.3, 1.0, 2.5})
        for (double t2 : {0.2, 0.8, 2.0}) {
          const double ref = two_port_cdf(t1, t2, mu, p.sigma_tilde_sq[0], p.sigma_tilde_sq[1]);
          EXPECT_NEAR(joint_cdf(std::vector<double>{t1, t2}, p), ref, 1e-8)
              << "mu=" << mu << " t1=" << t1 << " t2=" << t2;
        }
    }
}

TEST(Channel, UncorrelatedPortsFactorise) {
  const auto p = CorrelationProfile::from_values({0.0, 0.0, 0.0}, 1.0, {0.1, 0.2, 0.4});
  const std::vector<double> t{0.7, 1.1, 0.5};
  double ref = 1.0;
  for (int i = 0; i < 3; ++i) ref *= 1.0 - std::exp(-t[i] * t[i] / p.sigma_tilde_sq[i]);
  EXPECT_NEAR(joint_cdf(t, p), ref, 1e-9);
}

TEST(Channel, CdfLimitsAndMonotonicity) {
  const auto p = CorrelationProfile::from_values({0.0, 0.8, 0.6}, 1.0, {0.05, 0.05, 0.05});
  EXPECT_EQ(joint_cdf(std::vector<double>{0.0, 1.0, 1.0}, p), 0.0);
  EXPECT_EQ(joint_cdf(std::vector<double>{1.0, 0.0, 1.0}, p), 0.0);
  EXPECT_NEAR(joint_cdf(std::vector<double>{20.0, 20.0, 20.0}, p), 1.0, 1e-9);
  double prev = 0.0;
  for (double t = 0.1; t < 4.0; t += 0.3) {
    const double v = joint_cdf(std::vector<double>{t, t, t}, p);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  EXPECT_THROW(joint_cdf(std::vector<double>{1.0, 1.0}, p), DomainError);
  EXPECT_THROW(joint_cdf(std::vector<double>{1.0, -1.0, 1.0}, p), DomainError);
}

TEST(Channel, PdfIntegratesToCdf) {
  const auto p = CorrelationProfile::from_values({0.0, 0.75}, 1.0, {0.1, 0.1});
  const double t1 = 1.2, t2 = 0.9;
  const double mass = gauss_kronrod<double, 31>::integrate(
      [&](double x) {
        return gauss_kronrod<double, 31>::integrate(
            [&](double y) { return joint_pdf(std::vector<double>{x, y}, p); }, 0.0, t2, 10, 1e-12);
      },
      0.0, t1, 10, 1e-12);
  EXPECT_NEAR(mass, joint_cdf(std::vector<double>{t1, t2}, p), 1e-8);
}

TEST(Channel, ProfileValidation) {
  EXPECT_THROW(CorrelationProfile::from_values({0.5, 0.2}, 1.0, {0.1, 0.1}), DomainError);
  EXPECT_THROW(CorrelationProfile::from_values({0.0, 1.0}, 1.0, {0.1, 0.0}), DomainError);
  EXPECT_THROW(CorrelationProfile::from_values({0.0}, 1.0, {0.1, 0.1}), DomainError);
}

TEST(Channel, SampledChannelsCarryCorrelation) {
  FaArrayConfig cfg;
  cfg.num_fas = 1;
  Stream s(9, 0);
  const int n = 100000;
  std::vector<std::complex<double>> cross(cfg.ports_per_fa);
  std::vector<double> power(cfg.ports_per_fa);
  for (int k = 0; k < n; ++k) {
    const auto g = sample_correlated_channels(s, cfg, 1.0)[0];
    for (int i = 0; i < cfg.ports_per_fa; ++i) {
      cross[i] += g[i] * std::conj(g[0]);
      power[i] += std::norm(g[i]);
    }
  }
  for (int i = 1; i < cfg.ports_per_fa; ++i) {
    EXPECT_NEAR(cross[i].real() / n, autocorrelation(i + 1, cfg), 0.015) << i;
    EXPECT_NEAR(power[i] / n, 1.0, 0.015);
  }
}
