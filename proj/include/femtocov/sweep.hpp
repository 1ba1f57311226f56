#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "femtocov/mc.hpp"
#include "femtocov/params.hpp"
#include "femtocov/types.hpp"

namespace femtocov::sweep {

/// A family of curves sharing one axis (threshold in dB or inner radius in m).
struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<std::pair<std::string, std::vector<CoveragePoint>>> series;

  /// Throws std::out_of_range for unknown names.
  const std::vector<CoveragePoint>& at(const std::string& name) const;
  bool contains(const std::string& name) const;
};

/// "<method>_<scheme>_<region>", e.g. analytic_coverage_oriented_outer.
std::string series_name(Method method, Scheme scheme, Region region);

/// Inclusive arithmetic grid lo, lo+step, ... <= hi (with a small slack for rounding).
std::vector<double> linear_grid(double lo, double hi, double step);
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Analytic (and optionally MC) coverage over a threshold grid for each
/// scheme. Regions inner/outer are included when D > 0. The grid must be
/// nonempty and strictly increasing. MC runs one simulation per scheme.
SweepResult sweep_threshold(const NetworkParams& p, const std::vector<double>& thresholds_db,
                            const std::vector<Scheme>& schemes,
                            const std::optional<mc::McConfig>& mc_config = std::nullopt);

/// Overall coverage versus D for the coverage-oriented scheme, plus flat
/// uniform and single-tier references. Series: analytic_overall,
/// analytic_uniform, analytic_single_tier, and mc_overall when MC is attached.
SweepResult sweep_d(const NetworkParams& p, const std::vector<double>& radii_m, double threshold_db,
                    const std::optional<mc::McConfig>& mc_config = std::nullopt);

enum class Boundary { None, Lower, Upper };

std::string_view to_string(Boundary b);

struct SearchConfig {
  double d_lo_m = 10.0;
  double d_hi_m = 0.0;  // 0 selects 10 / sqrt(pi lambda1)
  std::size_t grid_points = 32;
  double tolerance_m = 1.0;
};

struct OptimalD {
  double threshold_db = 0.0;
  double d_star_m = 0.0;
  double coverage_at_star = 0.0;
  std::vector<std::pair<double, double>> search_trace;  // (D, coverage) in evaluation order
  Boundary boundary = Boundary::None;
};

/// Maximise the analytic overall coverage over D: log-spaced scan, then
/// golden-section refinement inside the cell bracketing the best scan point.
OptimalD optimal_d(const NetworkParams& p, double threshold_db, const SearchConfig& search = {});

struct SchemeRow {
  Scheme scheme = Scheme::SingleTier;
  double analytic = 0.0;
  double mc = 0.0;
  double mc_std_err = 0.0;
};

/// Overall coverage of the three schemes at `p.inner_radius_m`, analytic and MC.
std::vector<SchemeRow> compare_schemes(const NetworkParams& p, double threshold_db,
                                       const mc::McConfig& mc_config);

}  // namespace femtocov::sweep
