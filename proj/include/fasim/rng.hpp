#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fasim {

/// Random stream owned by one trial. Seeded from (seed, trial index) so a
/// trial's draws never depend on which worker runs it.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  /// 53 random bits mapped onto [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return normal_(engine_); }
  double exponential() { return -std::log1p(-uniform()); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cgauss(double variance) {
    const double s = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
  }

  std::int64_t poisson(double mean) {
    std::poisson_distribution<std::int64_t> d(mean);
    return d(engine_);
  }

  double gamma(double shape, double scale) {
    std::gamma_distribution<double> d(shape, scale);
    return d(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fasim
