#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "femtocov/specfun.hpp"

using namespace femtocov;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Independent oracle: elementary antiderivative of 1/(1+u^2).
double rho4_oracle(double x) { return std::sqrt(x) * (kPi / 2.0 - std::atan(1.0 / std::sqrt(x))); }

}  // namespace

TEST_CASE("integrate basic integrals") {
  CHECK(integrate([](double t) { return std::exp(-t); }, 0.0, kInf) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double u) { return 1.0 / (u * u); }, 1.0, kInf) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(integrate([](double) { return 3.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("integrate honours its error contract") {
  const QuadratureSpec spec{1e-11, 1e-14, 2000};
  // int_0^inf x^2 e^{-x} dx = 2, int_0^1 sqrt(x) dx = 2/3
  const auto r1 = integrate_detailed([](double x) { return x * x * std::exp(-x); }, 0.0, kInf, spec);
  CHECK(std::abs(r1.value - 2.0) <= std::max(spec.abs_tol, spec.rel_tol * 2.0) * 10);
  CHECK(r1.abs_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r1.value)));
  const auto r2 = integrate_detailed([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
  CHECK(r2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(r2.subdivisions > 0);
}

TEST_CASE("integrate reports non-convergence") {
  const QuadratureSpec tight{1e-12, 1e-15, 3};
  auto wiggly = [](double x) { return std::sin(1.0 / x); };
  CHECK_THROWS_AS(integrate(wiggly, 1e-3, 1.0, tight), QuadratureError);
  CHECK_THROWS_AS(integrate(wiggly, 0.0, 1.0, QuadratureSpec{0.0, 1e-12, 10}), std::invalid_argument);
  CHECK_THROWS_AS(integrate(wiggly, 0.0, 1.0, QuadratureSpec{1e-9, 1e-12, 0}), std::invalid_argument);
}

TEST_CASE("rho examples") {
  CHECK(rho(0.0, 4.0) == 0.0);
  CHECK(rho(1.0, 4.0) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  const double x = std::pow(10.0, 0.5);
  CHECK(rho(x, 4.0) == doctest::Approx(std::sqrt(x) * (kPi / 2.0 - std::atan(std::pow(10.0, -0.25)))).epsilon(1e-12));
  CHECK(rho_alpha4_closed(0.0) == 0.0);
  CHECK(rho_alpha4_closed(1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(rho_alpha4_closed(4.0) == doctest::Approx(2.0 * (kPi / 2.0 - std::atan(0.5))).epsilon(1e-15));
}

TEST_CASE("rho domain errors") {
  CHECK_THROWS_AS(rho(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(rho(1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(rho(-1.0, 4.0), std::domain_error);
}

TEST_CASE("rho(x, 4) matches the arctan closed form on a log grid") {
  for (int k = -30; k <= 30; ++k) {
    const double x = std::pow(10.0, k / 10.0);
    CHECK(std::abs(rho(x, 4.0) - rho4_oracle(x)) <= 1e-10);
    CHECK(std::abs(rho_alpha4_closed(x) - rho4_oracle(x)) <= 1e-12);
  }
}

TEST_CASE("rho agrees with two other quadrature routes") {
  const QuadratureSpec tight{1e-13, 1e-16, 4000};
  for (double alpha : {4.0, 5.0, 6.0}) {
    for (double x : {1e-3, 0.1, 1.0, std::pow(10.0, 0.5), 10.0, 100.0}) {
      const double beta = alpha / 2.0;
      // Original form: x^(2/a) int_{x^(-2/a)}^inf du / (1 + u^(a/2)).
      const double lower = std::pow(x, -2.0 / alpha);
      const double original =
          std::pow(x, 2.0 / alpha) * integrate([beta](double u) { return 1.0 / (1.0 + std::pow(u, beta)); },
                                               lower, kInf, tight);
      // After w = u x^(2/a): int_1^inf x / (x + w^(a/2)) dw.
      const double scaled = integrate([x, beta](double w) { return x / (x + std::pow(w, beta)); }, 1.0, kInf, tight);
      const double r = rho(x, alpha);
      INFO("alpha=" << alpha << " x=" << x);
      CHECK(std::abs(r - original) <= 1e-10 * std::max(1.0, r));
      CHECK(std::abs(r - scaled) <= 1e-10 * std::max(1.0, r));
    }
  }
}

TEST_CASE("rho is nondecreasing in x") {
  for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
    double last = 0.0;
    for (int k = -40; k <= 40; ++k) {
      const double v = rho(std::pow(10.0, k / 10.0), alpha);
      CHECK(v >= last);
      last = v;
    }
  }
}
