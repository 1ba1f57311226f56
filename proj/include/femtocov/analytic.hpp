#pragma once

#include "femtocov/params.hpp"
#include "femtocov/specfun.hpp"
#include "femtocov/types.hpp"

namespace femtocov::analytic {

// Distributions of q, the strongest long-term received power at the origin.
// `t` is a received power in watts. The region-conditioned forms require D > 0.

double cdf_q_uniform(double t, const DerivedParams& d);
double pdf_q_uniform(double t, const DerivedParams& d);

/// Conditioned on the origin lying in the outer region. Femto density near the
/// user is taken to be lambda2.
double cdf_q_outer(double t, const DerivedParams& d);
double pdf_q_outer(double t, const DerivedParams& d);

/// Conditioned on the inner region, assuming the user is always served by a macro BS.
double cdf_q_inner(double t, const DerivedParams& d);
double pdf_q_inner(double t, const DerivedParams& d);

// Laplace transforms of the interference evaluated at T/t, given q = t.
// `threshold` is the linear SINR threshold T.

/// Outer region, femto interference taken from the whole plane.
double laplace_outer(double threshold, double t, const DerivedParams& d);
/// Inner region, femto interference taken from outside B(o, D).
double laplace_inner(double threshold, double t, const DerivedParams& d);

// Coverage probabilities P[SINR > T] for linear threshold T > 0.

double coverage_uniform(double threshold, const NetworkParams& p, const QuadratureSpec& spec = {});
double coverage_outer(double threshold, const NetworkParams& p, const QuadratureSpec& spec = {});
double coverage_inner(double threshold, const NetworkParams& p, const QuadratureSpec& spec = {});
/// Mixture of the inner and outer results weighted by 1 - exp(-pi lambda1 D^2).
/// Falls back to coverage_uniform at D = 0.
double coverage_overall(double threshold, const NetworkParams& p, const QuadratureSpec& spec = {});

/// Probability that the origin lies in the inner region, 1 - exp(-pi lambda1 D^2).
double inner_probability(const NetworkParams& p);

/// Macro-only network derived from `p` (femto density set to zero).
NetworkParams single_tier(const NetworkParams& p);

/// Analytic coverage for a (scheme, region) pair.
///
/// Single-tier regions use the conditioned forms with lambda2 = 0, which are
/// exact there. Under uniform deployment the outer-region expression is exact,
/// and the inner-region value follows from the total-probability identity
/// uniform = w * inner + (1 - w) * outer. Region-conditioned values require D > 0.
double scheme_coverage(Scheme scheme, Region region, double threshold, const NetworkParams& p,
                       const QuadratureSpec& spec = {});

}  // namespace femtocov::analytic
