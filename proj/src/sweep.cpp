#include "femtocov/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "femtocov/analytic.hpp"

namespace femtocov::sweep {

namespace {

std::vector<Region> regions_for(const NetworkParams& p) {
  if (p.inner_radius_m > 0.0) return {Region::Inner, Region::Outer, Region::Overall};
  return {Region::Overall};
}

NetworkParams network_for(Scheme scheme, const NetworkParams& p) {
  return scheme == Scheme::SingleTier ? analytic::single_tier(p) : p;
}

mc::McConfig mc_for(Scheme scheme, mc::McConfig config) {
  config.activation =
      scheme == Scheme::CoverageOriented ? mc::Activation::CoverageOriented : mc::Activation::AllActive;
  return config;
}

CoveragePoint mc_point(const mc::ThresholdEstimate& e, Region r) {
  CoveragePoint cp;
  cp.threshold_db = e.threshold_db;
  cp.region = r;
  cp.method = Method::MonteCarlo;
  const mc::McEstimate* est = &e.overall;
  if (r == Region::Inner) est = e.inner ? &*e.inner : nullptr;
  if (r == Region::Outer) est = e.outer ? &*e.outer : nullptr;
  // Empty stratum: no estimate.
  cp.value = est ? est->value : std::nan("");
  cp.std_err = est ? est->std_err : std::nan("");
  cp.n_samples = est ? est->n_samples : 0;
  return cp;
}

}  // namespace

const std::vector<CoveragePoint>& SweepResult::at(const std::string& name) const {
  for (const auto& [n, pts] : series) {
    if (n == name) return pts;
  }
  throw std::out_of_range("SweepResult: no series named " + name);
}

bool SweepResult::contains(const std::string& name) const {
  return std::any_of(series.begin(), series.end(), [&](const auto& s) { return s.first == name; });
}

std::string series_name(Method method, Scheme scheme, Region region) {
  return std::string(to_string(method)) + "_" + std::string(to_string(scheme)) + "_" +
         std::string(to_string(region));
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("linear_grid: need finite lo <= hi and step > 0");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

SweepResult sweep_threshold(const NetworkParams& p, const std::vector<double>& thresholds_db,
                            const std::vector<Scheme>& schemes, const std::optional<mc::McConfig>& mc_config) {
  if (thresholds_db.empty()) throw std::invalid_argument("sweep_threshold: empty threshold grid");
  if (!std::is_sorted(thresholds_db.begin(), thresholds_db.end(), std::less_equal<>()))
    throw std::invalid_argument("sweep_threshold: threshold grid must be strictly increasing");
  validate(p);

  SweepResult out;
  out.axis_name = "threshold_db";
  out.axis_values = thresholds_db;
  const auto regions = regions_for(p);
  for (Scheme scheme : schemes) {
    for (Region region : regions) {
      std::vector<CoveragePoint> pts;
      for (double t_db : thresholds_db) {
        CoveragePoint cp;
        cp.threshold_db = t_db;
        cp.region = region;
        cp.value = analytic::scheme_coverage(scheme, region, db_to_linear(t_db), p);
        pts.push_back(cp);
      }
      out.series.emplace_back(series_name(Method::Analytic, scheme, region), std::move(pts));
    }
    if (mc_config) {
      const auto est = mc::estimate_coverage(network_for(scheme, p), thresholds_db, mc_for(scheme, *mc_config));
      for (Region region : regions) {
        std::vector<CoveragePoint> pts;
        for (const auto& e : est.per_threshold) pts.push_back(mc_point(e, region));
        out.series.emplace_back(series_name(Method::MonteCarlo, scheme, region), std::move(pts));
      }
    }
  }
  return out;
}

SweepResult sweep_d(const NetworkParams& p, const std::vector<double>& radii_m, double threshold_db,
                    const std::optional<mc::McConfig>& mc_config) {
  if (radii_m.empty()) throw std::invalid_argument("sweep_d: empty radius grid");
  for (double d : radii_m) {
    if (!(d >= 0.0)) throw std::invalid_argument("sweep_d: radii must be >= 0");
  }
  const double t = db_to_linear(threshold_db);

  SweepResult out;
  out.axis_name = "inner_radius_m";
  out.axis_values = radii_m;
  auto flat = [&](double value) {
    std::vector<CoveragePoint> pts(radii_m.size());
    for (auto& cp : pts) {
      cp.threshold_db = threshold_db;
      cp.value = value;
    }
    return pts;
  };

  std::vector<CoveragePoint> overall;
  std::vector<CoveragePoint> simulated;
  for (double d : radii_m) {
    NetworkParams q = p;
    q.inner_radius_m = d;
    CoveragePoint cp;
    cp.threshold_db = threshold_db;
    cp.value = analytic::coverage_overall(t, q);
    overall.push_back(cp);
    if (mc_config) {
      const std::vector<double> one{threshold_db};
      const auto est = mc::estimate_coverage(q, one, mc_for(Scheme::CoverageOriented, *mc_config));
      simulated.push_back(mc_point(est.per_threshold.front(), Region::Overall));
    }
  }
  out.series.emplace_back("analytic_overall", std::move(overall));
  out.series.emplace_back("analytic_uniform", flat(analytic::coverage_uniform(t, p)));
  out.series.emplace_back("analytic_single_tier", flat(analytic::coverage_uniform(t, analytic::single_tier(p))));
  if (mc_config) out.series.emplace_back("mc_overall", std::move(simulated));
  return out;
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::None: return "none";
    case Boundary::Lower: return "lower";
    case Boundary::Upper: return "upper";
  }
  return "";
}

OptimalD optimal_d(const NetworkParams& p, double threshold_db, const SearchConfig& search) {
  if (!std::isfinite(threshold_db)) throw std::invalid_argument("optimal_d: threshold must be finite");
  validate(p);
  const double cap = max_inner_radius(p.macro.density_per_m2);
  const double hi = search.d_hi_m > 0.0 ? search.d_hi_m : cap;
  const double lo = search.d_lo_m;
  if (!(lo > 0.0) || !(hi > lo) || hi > cap * (1.0 + 1e-12))
    throw std::invalid_argument("optimal_d: need 0 < d_lo < d_hi <= 10/sqrt(pi*lambda1)");
  if (search.grid_points < 3) throw std::invalid_argument("optimal_d: grid_points must be >= 3");
  if (!(search.tolerance_m > 0.0)) throw std::invalid_argument("optimal_d: tolerance must be > 0");

  const double t = db_to_linear(threshold_db);
  OptimalD out;
  out.threshold_db = threshold_db;
  auto coverage_at = [&](double d) {
    NetworkParams q = p;
    q.inner_radius_m = std::min(d, cap);
    const double c = analytic::coverage_overall(t, q);
    out.search_trace.emplace_back(d, c);
    return c;
  };

  const auto grid = log_grid(lo, hi, search.grid_points);
  std::vector<double> values;
  for (double d : grid) values.push_back(coverage_at(d));
  const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());

  // Golden-section refinement on the bracketing cell.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = coverage_at(x1);
  double f2 = coverage_at(x2);
  while (b - a > search.tolerance_m) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = coverage_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = coverage_at(x2);
    }
  }
  coverage_at(0.5 * (a + b));

  const auto star = std::max_element(out.search_trace.begin(), out.search_trace.end(),
                                     [](const auto& l, const auto& r) { return l.second < r.second; });
  out.d_star_m = star->first;
  out.coverage_at_star = star->second;
  if (out.d_star_m - lo <= search.tolerance_m) out.boundary = Boundary::Lower;
  else if (hi - out.d_star_m <= search.tolerance_m) out.boundary = Boundary::Upper;
  return out;
}

std::vector<SchemeRow> compare_schemes(const NetworkParams& p, double threshold_db, const mc::McConfig& mc_config) {
  validate(p);
  const double t = db_to_linear(threshold_db);
  const std::vector<double> one{threshold_db};
  std::vector<SchemeRow> rows;
  for (Scheme scheme : {Scheme::SingleTier, Scheme::Uniform, Scheme::CoverageOriented}) {
    SchemeRow row;
    row.scheme = scheme;
    row.analytic = analytic::scheme_coverage(scheme, Region::Overall, t, p);
    const auto est = mc::estimate_coverage(network_for(scheme, p), one, mc_for(scheme, mc_config));
    row.mc = est.per_threshold.front().overall.value;
    row.mc_std_err = est.per_threshold.front().overall.std_err;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace femtocov::sweep
