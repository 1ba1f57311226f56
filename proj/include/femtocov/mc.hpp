#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "femtocov/params.hpp"
#include "femtocov/types.hpp"

namespace femtocov::mc {

using Rng = std::mt19937_64;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// BS locations of one tier inside a disc of radius `window_radius_m` centred at the origin.
struct PointPattern {
  std::vector<Point> points;
  double window_radius_m = 0.0;
};

enum class Activation { CoverageOriented, AllActive };

struct NetworkRealization {
  PointPattern macro;  // sampled on R + D
  PointPattern femto;  // sampled on R
  std::vector<std::uint8_t> femto_active;  // aligned with femto.points
  RegionLabel origin_region = RegionLabel::Outer;
  double inner_radius_m = 0.0;

  std::size_t active_femto_count() const;
};

struct SinrSample {
  double sinr_linear = 0.0;
  RegionLabel region = RegionLabel::Outer;
  int serving_tier = 1;
  std::size_t serving_index = 0;  // index into the serving tier's pattern
};

struct McEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_inner = 0;
  std::size_t n_outer = 0;
};

/// No BS at all is available to serve the origin.
class EmptyRealization : public std::runtime_error {
 public:
  EmptyRealization() : std::runtime_error("realization has no candidate serving BS") {}
};

/// Too many realizations had to be redrawn.
class McError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent stream for (base_seed, realization index, redraw attempt).
Rng make_stream(std::uint64_t base_seed, std::uint64_t index, std::uint64_t attempt = 0);

/// Default simulation window 10 / sqrt(pi lambda1).
double default_window_radius(const NetworkParams& p);

PointPattern sample_ppp(double density_per_m2, double window_radius_m, Rng& rng);

/// Homogeneous PPP restricted to the annulus r_in < |x| <= r_out.
std::vector<Point> sample_ppp_annulus(double density_per_m2, double r_in, double r_out, Rng& rng);

/// Macro on R + D, femto on R, activation mask and origin region filled in.
/// Requires R >= 5 / sqrt(pi lambda1).
NetworkRealization realize(const NetworkParams& p, double window_radius_m, Rng& rng,
                           Activation activation = Activation::CoverageOriented);

/// Recompute the activation mask and origin region from the point patterns.
/// A femto is active iff no macro lies strictly closer than D; the origin is
/// Inner iff some macro lies strictly closer than D.
void apply_activation(NetworkRealization& r, Activation activation = Activation::CoverageOriented);

/// Grow the window to `new_radius_m` by adding independent annuli, leaving
/// every existing point and its activation decision untouched.
void extend_window(NetworkRealization& r, const NetworkParams& p, double new_radius_m, Rng& rng,
                   Activation activation = Activation::CoverageOriented);

/// SINR at the origin under max long-term received power association with
/// Rayleigh fading on every link. Ties go to the macro tier.
/// Fading for each tier is drawn from its own child stream in point order,
/// so appending points never changes the fades of existing ones.
SinrSample sinr_at_origin(const NetworkRealization& r, const NetworkParams& p, Rng& rng);

struct McConfig {
  std::size_t n_realizations = 10000;
  std::uint64_t seed = 42;
  double window_radius_m = 0.0;  // 0 selects default_window_radius
  unsigned workers = 1;          // 0 selects hardware concurrency
  Activation activation = Activation::CoverageOriented;
};

struct SampleSet {
  std::vector<SinrSample> samples;  // one per realization, in index order
  std::size_t n_redrawn = 0;
};

/// One SINR sample per realization. Deterministic in (p, config.n_realizations,
/// config.seed, window, activation) for any worker count.
SampleSet simulate(const NetworkParams& p, const McConfig& config);

struct ThresholdEstimate {
  double threshold_db = 0.0;
  McEstimate overall;
  std::optional<McEstimate> inner;  // absent when the stratum is empty
  std::optional<McEstimate> outer;
};

struct CoverageEstimate {
  std::vector<ThresholdEstimate> per_threshold;
  std::size_t n_inner = 0;
  std::size_t n_outer = 0;
  std::size_t n_redrawn = 0;
};

/// Region-stratified coverage frequencies with binomial standard errors.
CoverageEstimate tally(std::span<const SinrSample> samples, std::span<const double> thresholds_db);

CoverageEstimate estimate_coverage(const NetworkParams& p, std::span<const double> thresholds_db,
                                   const McConfig& config);

}  // namespace femtocov::mc
