#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fasim/error.hpp"
#include "fasim/numerics.hpp"

namespace fasim::numerics {

namespace {

// Kronrod nodes; odd indices are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw DomainError("integrand returned a non-finite value at x = " + std::to_string(x));
  return v;
}

Piece gauss_kronrod15(const Integrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = checked(f, centre);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(res_k);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, centre - dx);
    const double f2 = checked(f, centre + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    res_k += kWgk[j] * (f1 + f2);
    res_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double width = std::abs(half);
  res_abs *= width;
  res_asc *= width;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, res_k * half, err};
}

}  // namespace

QuadratureResult integrate_partitioned(const Integrand& f, std::span<const double> points,
                                       const QuadratureSpec& spec) {
  spec.validate();
  if (points.size() < 2) throw DomainError("integrate_partitioned: need at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw DomainError("integrate_partitioned: non-finite point");
    if (i > 0 && points[i] < points[i - 1])
      throw DomainError("integrate_partitioned: points must be sorted");
  }

  std::vector<Piece> pieces;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] > points[i - 1]) pieces.push_back(gauss_kronrod15(f, points[i - 1], points[i]));
  if (pieces.empty()) return {};

  for (;;) {
    double total = 0.0;
    double err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      total += pieces[i].value;
      err += pieces[i].error;
      if (pieces[i].error > pieces[worst].error) worst = i;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err <= tol) return {total, err, static_cast<int>(pieces.size())};

    const Piece p = pieces[worst];
    const double mid = 0.5 * (p.a + p.b);
    const bool too_narrow = !(mid > p.a && mid < p.b);
    if (static_cast<int>(pieces.size()) >= spec.max_subdivisions || too_narrow)
      throw ConvergenceError("adaptive quadrature did not converge within " +
                                 std::to_string(spec.max_subdivisions) + " subintervals",
                             total, err);
    pieces[worst] = gauss_kronrod15(f, p.a, mid);
    pieces.push_back(gauss_kronrod15(f, mid, p.b));
  }
}

double integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate_finite: non-finite limit");
  if (a > b) return -integrate_finite(f, b, a, spec);
  const double pts[2] = {a, b};
  return integrate_partitioned(f, pts, spec).value;
}

}  // namespace fasim::numerics
