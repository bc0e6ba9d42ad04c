#include "fasim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fasim/error.hpp"

namespace fasim::numerics {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Above this I0(x) overflows a double.
constexpr double kI0OverflowArg = 713.0;

// Miller backward recurrence for I_k(x), normalised through
// I0(x) + 2 * sum_{k>=1} I_k(x) = exp(x). Returns the Horner sum
// sum_k r^k I_k(x) and I_0(x), both scaled by exp(-x).
struct MillerSums {
  double weighted;
  double zeroth;
};

int miller_start(double x) { return static_cast<int>(9.0 * std::sqrt(x)) + 40; }

MillerSums miller_sums(double x, double r) {
  if (x < 1e-100) return {1.0, 1.0};
  const int start = miller_start(x);
  double next = 0.0;
  double cur = 1.0;
  double horner = 0.0;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    horner = cur + r * horner;
    norm += 2.0 * cur;
    const double prev = (2.0 * k / x) * cur + next;
    next = cur;
    cur = prev;
    if (cur > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      horner *= 1e-250;
      norm *= 1e-250;
    }
  }
  horner = cur + r * horner;
  norm += cur;
  return {horner / norm, cur / norm};
}

// exp(-x) I0(x) for large x from the Hankel asymptotic series.
double i0_scaled_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw DomainError("QuadratureSpec: tolerances must be strictly positive");
  if (max_subdivisions < 16) throw DomainError("QuadratureSpec: max_subdivisions must be >= 16");
  if (!(truncation_radius >= 0.0) || !std::isfinite(truncation_radius))
    throw DomainError("QuadratureSpec: truncation_radius must be finite and non-negative");
}

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  return std::cyl_bessel_j(0.0, std::abs(x));
}

double bessel_i0(double x) {
  require_finite(x, "bessel_i0");
  const double ax = std::abs(x);
  if (ax > kI0OverflowArg)
    throw std::overflow_error("bessel_i0: result overflows, use bessel_i0_scaled");
  return std::cyl_bessel_i(0.0, ax);
}

double bessel_i0_scaled(double x) {
  require_finite(x, "bessel_i0_scaled");
  const double ax = std::abs(x);
  if (ax >= 500.0) return i0_scaled_asymptotic(ax);
  return miller_sums(ax, 0.0).zeroth;
}

void scaled_bessel_i_sequence(double x, std::span<double> out) {
  require_finite(x, "scaled_bessel_i_sequence");
  if (x < 0.0) throw DomainError("scaled_bessel_i_sequence: x must be >= 0");
  if (out.empty()) return;
  for (auto& v : out) v = 0.0;
  if (x < 1e-100) {
    out[0] = 1.0;
    return;
  }
  const int n = static_cast<int>(out.size());
  const int start = std::max(miller_start(x), n + 20);
  double next = 0.0;
  double cur = 1.0;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    if (k < n) out[k] = cur;
    norm += 2.0 * cur;
    const double prev = (2.0 * k / x) * cur + next;
    next = cur;
    cur = prev;
    if (cur > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      for (int j = k; j < n; ++j) out[j] *= 1e-250;
    }
  }
  norm += cur;
  out[0] = cur;
  for (auto& v : out) v /= norm;
}

double marcum_q1(double a, double b) {
  require_finite(a, "marcum_q1");
  require_finite(b, "marcum_q1");
  if (a < 0.0 || b < 0.0) throw DomainError("marcum_q1: arguments must be non-negative");
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);

  const double gap = b - a;
  // Tails settle to 0 / 1 well below double resolution past these gaps.
  if (gap > 38.6) return 0.0;
  if (gap < -9.0 && 0.5 * gap * gap > 40.0) return 1.0;

  const double x = a * b;
  if (b > a) {
    const MillerSums s = miller_sums(x, a / b);
    return std::exp(-0.5 * gap * gap) * s.weighted;
  }
  const MillerSums s = miller_sums(x, b / a);
  const double q = 1.0 - std::exp(-0.5 * gap * gap) * (s.weighted - s.zeroth);
  return std::clamp(q, 0.0, 1.0);
}

double erf(double x) {
  require_finite(x, "erf");
  return std::erf(x);
}

double gamma_pdf(double x, double shape, double scale) {
  require_finite(x, "gamma_pdf");
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
    throw DomainError("gamma_pdf: shape and scale must be strictly positive");
  if (!(x > 0.0)) throw DomainError("gamma_pdf: argument must be strictly positive");
  const double log_pdf =
      (shape - 1.0) * std::log(x) - x / scale - std::lgamma(shape) - shape * std::log(scale);
  return std::exp(log_pdf);
}

}  // namespace fasim::numerics
