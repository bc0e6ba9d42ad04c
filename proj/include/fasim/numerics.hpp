#pragma once

#include <functional>
#include <span>

namespace fasim::numerics {

/// Accuracy contract for the adaptive integrator.
///
/// A result is accepted once the summed error estimate falls below
/// max(abs_tol, rel_tol * |result|). `truncation_radius` is the finite upper
/// limit used when a semi-infinite integral is mapped onto a finite one; zero
/// means the caller derives it from a known integrand envelope.
struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 200;
  double truncation_radius = 0.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

// Special functions. All are pure and thread-safe.

double bessel_j0(double x);

/// Unscaled I0. Throws std::overflow_error once the result would not fit in a
/// double; use bessel_i0_scaled there.
double bessel_i0(double x);

/// exp(-|x|) * I0(x).
double bessel_i0_scaled(double x);

/// First-order Marcum Q-function Q1(a, b), a, b >= 0.
double marcum_q1(double a, double b);

double erf(double x);

/// Gamma density with the given shape and scale, evaluated in log space.
double gamma_pdf(double x, double shape, double scale);

/// Fills out[k] = exp(-x) I_k(x) for k = 0 .. out.size()-1, x >= 0.
void scaled_bessel_i_sequence(double x, std::span<double> out);

// Quadrature.

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b].
/// Throws ConvergenceError when `spec.max_subdivisions` is exhausted.
double integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Same as integrate_finite, but starts from the partition given by the sorted
/// `points` (first and last entries are the limits) and reports the error.
QuadratureResult integrate_partitioned(const Integrand& f, std::span<const double> points,
                                       const QuadratureSpec& spec);

}  // namespace fasim::numerics
