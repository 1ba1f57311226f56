#include "femtocov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace femtocov::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inner_region(const DerivedParams& d, const char* who) {
  if (!(d.inner_radius_m > 0.0))
    throw std::invalid_argument(std::string(who) + ": requires inner_radius_m > 0");
}

void require_threshold(double threshold, const char* who) {
  if (!(threshold > 0.0) || std::isnan(threshold))
    throw std::invalid_argument(std::string(who) + ": threshold must be > 0");
}

// s = t^(-2/alpha), the variable all kernels are written in.
double s_of(double t, const DerivedParams& d) { return std::pow(t, -2.0 / d.alpha); }

// lambda1 * (p1^(2/alpha) s - D^2). Zero at the breakpoint by construction, which
// keeps the two-piece expressions continuous there.
double macro_excess(double s, const DerivedParams& d) {
  const double r = d.inner_radius_m;
  return d.lambda1 * (std::pow(d.p1_linear, 2.0 / d.alpha) * s - r * r);
}

// (2 pi w / alpha) t^(-2/alpha - 1) exp(-exponent), in log form so that the
// t -> 0 and t -> inf tails evaluate to 0 rather than inf * 0.
double density(double weight, double t, double exponent, const DerivedParams& d) {
  if (weight <= 0.0) return 0.0;
  return std::exp(std::log(2.0 * kPi * weight / d.alpha) - (2.0 / d.alpha + 1.0) * std::log(t) - exponent);
}

// Noise factor exp(-T sigma^2 s^(alpha/2)) with s = u / scale.
double noise_factor(double threshold, double u, double scale, const DerivedParams& d) {
  return std::exp(-threshold * d.noise_watts * std::pow(u / scale, 0.5 * d.alpha));
}

}  // namespace

double cdf_q_uniform(double t, const DerivedParams& d) {
  if (t <= 0.0) return 0.0;
  return std::exp(-kPi * d.xi * s_of(t, d));
}

double pdf_q_uniform(double t, const DerivedParams& d) {
  if (t <= 0.0) return 0.0;
  return density(d.xi, t, kPi * d.xi * s_of(t, d), d);
}

double cdf_q_outer(double t, const DerivedParams& d) {
  require_inner_region(d, "cdf_q_outer");
  if (t <= 0.0) return 0.0;
  const double s = s_of(t, d);
  const double femto = kPi * d.femto_weight() * s;
  if (t > d.breakpoint_t) return std::exp(-femto);
  return std::exp(-femto - kPi * macro_excess(s, d));
}

double pdf_q_outer(double t, const DerivedParams& d) {
  require_inner_region(d, "pdf_q_outer");
  if (t <= 0.0) return 0.0;
  const double s = s_of(t, d);
  const double femto = kPi * d.femto_weight() * s;
  if (t > d.breakpoint_t) return density(d.femto_weight(), t, femto, d);
  return density(d.xi, t, femto + kPi * macro_excess(s, d), d);
}

double cdf_q_inner(double t, const DerivedParams& d) {
  require_inner_region(d, "cdf_q_inner");
  if (t <= d.breakpoint_t) return 0.0;
  const double r = d.inner_radius_m;
  const double s = s_of(t, d);
  const double mass = kPi * d.lambda1 * r * r;
  // (exp(-pi lambda1 p1^(2/a) s) - exp(-mass)) / (1 - exp(-mass))
  return std::exp(-mass) * std::expm1(-kPi * macro_excess(s, d)) / -std::expm1(-mass);
}

double pdf_q_inner(double t, const DerivedParams& d) {
  require_inner_region(d, "pdf_q_inner");
  if (t <= d.breakpoint_t) return 0.0;
  const double r = d.inner_radius_m;
  const double mass = kPi * d.lambda1 * r * r;
  return density(d.macro_weight(), t, kPi * d.macro_weight() * s_of(t, d), d) / -std::expm1(-mass);
}

double laplace_outer(double threshold, double t, const DerivedParams& d) {
  const double s = s_of(t, d);
  const double rho_t = rho(threshold, d.alpha);
  if (t <= d.breakpoint_t) return std::exp(-kPi * d.xi * rho_t * s);
  const double r = d.inner_radius_m;
  const double x = d.p1_linear * threshold / (std::pow(r, d.alpha) * t);
  return std::exp(-kPi * d.lambda1 * r * r * rho(x, d.alpha)) *
         std::exp(-kPi * d.femto_weight() * rho_t * s);
}

double laplace_inner(double threshold, double t, const DerivedParams& d) {
  const double s = s_of(t, d);
  const double r = d.inner_radius_m;
  const double macro = std::exp(-kPi * d.macro_weight() * rho(threshold, d.alpha) * s);
  if (d.lambda2 == 0.0 || r == 0.0) {
    return macro * std::exp(-kPi * d.femto_weight() * rho(threshold, d.alpha) * s);
  }
  const double x = d.p2_linear * threshold / (std::pow(r, d.alpha) * t);
  return macro * std::exp(-kPi * d.lambda2 * r * r * rho(x, d.alpha));
}

// The coverage integrals below are written in u = c * s where s = t^(-2/alpha)
// and c is the matching tier weight times pi. The kernel then decays like
// exp(-(1 + rho(T)) u) on an O(1) scale.

double coverage_uniform(double threshold, const NetworkParams& p, const QuadratureSpec& spec) {
  require_threshold(threshold, "coverage_uniform");
  const DerivedParams d = derive(p);
  const double c = kPi * d.xi;
  const double k = 1.0 + rho(threshold, d.alpha);
  auto kernel = [&](double u) { return noise_factor(threshold, u, c, d) * std::exp(-k * u); };
  return integrate(kernel, 0.0, std::numeric_limits<double>::infinity(), spec);
}

double coverage_outer(double threshold, const NetworkParams& p, const QuadratureSpec& spec) {
  require_threshold(threshold, "coverage_outer");
  const DerivedParams d = derive(p);
  require_inner_region(d, "coverage_outer");
  const double r = d.inner_radius_m;
  const double c = kPi * d.xi;
  const double k = 1.0 + rho(threshold, d.alpha);
  const double s_star = r * r / std::pow(d.p1_linear, 2.0 / d.alpha);
  const double u_star = c * s_star;
  const double mass = kPi * d.lambda1 * r * r;

  // t <= breakpoint: two-tier kernel renormalised by exp(-mass), shifted to start at u*.
  auto macro_piece = [&](double w) {
    const double u = u_star + w;
    return noise_factor(threshold, u, c, d) * std::exp(mass - k * u);
  };
  double total = integrate(macro_piece, 0.0, std::numeric_limits<double>::infinity(), spec);

  // t > breakpoint: femto server, macro interference from beyond D.
  if (d.lambda2 > 0.0) {
    const double femto_share = d.femto_weight() / d.xi;
    const double femto_k = k * femto_share;
    auto femto_piece = [&](double u) {
      const double x = threshold * std::pow(u / u_star, 0.5 * d.alpha);
      return femto_share * noise_factor(threshold, u, c, d) *
             std::exp(-mass * rho(x, d.alpha) - femto_k * u);
    };
    total += integrate(femto_piece, 0.0, u_star, spec);
  }
  return total;
}

double coverage_inner(double threshold, const NetworkParams& p, const QuadratureSpec& spec) {
  require_threshold(threshold, "coverage_inner");
  const DerivedParams d = derive(p);
  require_inner_region(d, "coverage_inner");
  const double r = d.inner_radius_m;
  const double c = kPi * d.macro_weight();
  const double k = 1.0 + rho(threshold, d.alpha);
  const double mass = kPi * d.lambda1 * r * r;  // image of the breakpoint in u
  const double femto_mass = kPi * d.lambda2 * r * r;
  const double power_ratio = d.p2_linear / d.p1_linear;

  auto kernel = [&](double u) {
    double value = noise_factor(threshold, u, c, d) * std::exp(-k * u);
    if (femto_mass > 0.0) {
      const double x = threshold * power_ratio * std::pow(u / mass, 0.5 * d.alpha);
      value *= std::exp(-femto_mass * rho(x, d.alpha));
    }
    return value;
  };
  return integrate(kernel, 0.0, mass, spec) / -std::expm1(-mass);
}

double inner_probability(const NetworkParams& p) {
  const double r = p.inner_radius_m;
  return -std::expm1(-kPi * p.macro.density_per_m2 * r * r);
}

double coverage_overall(double threshold, const NetworkParams& p, const QuadratureSpec& spec) {
  if (p.inner_radius_m == 0.0) return coverage_uniform(threshold, p, spec);
  const double w = inner_probability(p);
  return w * coverage_inner(threshold, p, spec) + (1.0 - w) * coverage_outer(threshold, p, spec);
}

NetworkParams single_tier(const NetworkParams& p) {
  NetworkParams q = p;
  q.femto.density_per_m2 = 0.0;
  return q;
}

double scheme_coverage(Scheme scheme, Region region, double threshold, const NetworkParams& p,
                       const QuadratureSpec& spec) {
  if (region != Region::Overall && !(p.inner_radius_m > 0.0))
    throw std::invalid_argument("scheme_coverage: region-conditioned coverage requires D > 0");
  switch (scheme) {
    case Scheme::SingleTier: {
      const NetworkParams q = single_tier(p);
      switch (region) {
        case Region::Inner: return coverage_inner(threshold, q, spec);
        case Region::Outer: return coverage_outer(threshold, q, spec);
        case Region::Overall: return coverage_uniform(threshold, q, spec);
      }
      break;
    }
    case Scheme::Uniform: {
      if (region == Region::Overall) return coverage_uniform(threshold, p, spec);
      const double outer = coverage_outer(threshold, p, spec);
      if (region == Region::Outer) return outer;
      const double w = inner_probability(p);
      const double inner = (coverage_uniform(threshold, p, spec) - (1.0 - w) * outer) / w;
      return std::clamp(inner, 0.0, 1.0);
    }
    case Scheme::CoverageOriented: {
      switch (region) {
        case Region::Inner: return coverage_inner(threshold, p, spec);
        case Region::Outer: return coverage_outer(threshold, p, spec);
        case Region::Overall: return coverage_overall(threshold, p, spec);
      }
      break;
    }
  }
  throw std::invalid_argument("scheme_coverage: unknown scheme/region");
}

}  // namespace femtocov::analytic
