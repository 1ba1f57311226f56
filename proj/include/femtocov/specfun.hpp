#pragma once

#include <functional>
#include <stdexcept>

namespace femtocov {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

/// Raised when the subdivision budget runs out before the tolerance is met.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// `b` may be +infinity; the tail is mapped through u = a + v/(1-v).
/// Guarantees abs_error <= max(abs_tol, rel_tol*|value|) or throws QuadratureError.
QuadratureResult integrate_detailed(const Integrand& f, double a, double b,
                                    const QuadratureSpec& spec = {});

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Tolerances used for rho. Tighter than the default because rho appears
/// inside every outer coverage integrand.
QuadratureSpec rho_quadrature();

/// rho(x, alpha) = x^(2/alpha) * int_{x^(-2/alpha)}^inf du / (1 + u^(alpha/2)),
/// evaluated in the equivalent form int_1^inf x / (x + w^(alpha/2)) dw.
/// Throws std::domain_error for alpha <= 2 or x < 0.
double rho(double x, double alpha);
double rho(double x, double alpha, const QuadratureSpec& spec);

/// Closed form for alpha = 4: sqrt(x) * (pi/2 - atan(1/sqrt(x))).
double rho_alpha4_closed(double x);

}  // namespace femtocov
