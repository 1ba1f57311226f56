#include "femtocov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace femtocov {

namespace {

// Kronrod 15-point abscissae on [-1, 1] (positive half), odd indices are Gauss 7 nodes.
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
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One GK15 panel with the QUADPACK error heuristic.
Panel gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double habs = std::abs(half);
  const double result = resk * half;
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
  return {a, b, result, err};
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int subdivisions = 0;

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (total_err > tolerance()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError("quadrature did not converge within " +
                                std::to_string(spec.max_subdivisions) + " subdivisions",
                            total, total_err);
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panel can no longer be split in floating point; accept its contribution.
    if (mid <= worst.a || mid >= worst.b) {
      throw QuadratureError("quadrature panel width reached machine precision", total, total_err);
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum to shed accumulated cancellation from the incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(sum)) throw QuadratureError("integrand produced a non-finite value", sum, err);
  return {sum, err, subdivisions};
}

}  // namespace

QuadratureResult integrate_detailed(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1)
    throw std::invalid_argument("QuadratureSpec: tolerances must be > 0 and max_subdivisions >= 1");
  if (std::isnan(a) || std::isnan(b) || std::isinf(a))
    throw std::invalid_argument("integrate: lower limit must be finite");
  if (a == b) return {};
  if (std::isinf(b)) {
    if (b < 0) throw std::invalid_argument("integrate: upper limit -inf not supported");
    auto mapped = [&f, a](double v) {
      if (v >= 1.0) return 0.0;
      const double one_minus = 1.0 - v;
      const double value = f(a + v / one_minus);
      return value == 0.0 ? 0.0 : value / (one_minus * one_minus);
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
  }
  if (b < a) {
    QuadratureResult r = integrate_finite(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  return integrate_finite(f, a, b, spec);
}

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_detailed(f, a, b, spec).value;
}

QuadratureSpec rho_quadrature() { return {1e-13, 1e-15, 2000}; }

double rho(double x, double alpha) { return rho(x, alpha, rho_quadrature()); }

double rho(double x, double alpha, const QuadratureSpec& spec) {
  if (!(alpha > 2.0)) throw std::domain_error("rho: alpha must be > 2");
  if (!(x >= 0.0)) throw std::domain_error("rho: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  // w = v^(-g), g = 1/(beta - 1), beta = alpha/2 maps [1, inf) onto (0, 1] with
  // a bounded integrand g*x / (x v^(g*beta) + 1).
  const double beta = 0.5 * alpha;
  const double g = 1.0 / (beta - 1.0);
  const double power = g * beta;
  auto integrand = [x, g, power](double v) { return g * x / (x * std::pow(v, power) + 1.0); };
  return integrate(integrand, 0.0, 1.0, spec);
}

double rho_alpha4_closed(double x) {
  if (x <= 0.0) return 0.0;
  const double s = std::sqrt(x);
  return s * (std::numbers::pi / 2.0 - std::atan(1.0 / s));
}

}  // namespace femtocov
