#include "femtocov/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "femtocov/analytic.hpp"
#include "femtocov/mc.hpp"
#include "femtocov/specfun.hpp"
#include "femtocov/sweep.hpp"

namespace femtocov::cli {

namespace {

std::string prob(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<double> threshold_grid(const RunConfig& c) {
  try {
    return sweep::linear_grid(c.t_min_db, c.t_max_db, c.t_step_db);
  } catch (const std::invalid_argument&) {
    throw ConfigError("threshold grid is empty: need --t-min <= --t-max and --t-step > 0");
  }
}

std::vector<double> radius_grid(const RunConfig& c) {
  try {
    return sweep::linear_grid(c.d_min_m, c.d_max_m, c.d_step_m);
  } catch (const std::invalid_argument&) {
    throw ConfigError("radius grid is empty: need --d-min <= --d-max and --d-step > 0");
  }
}

mc::McConfig mc_config(const RunConfig& c) {
  if (c.n_realizations < 100) throw ConfigError("--n must be >= 100");
  mc::McConfig m;
  m.n_realizations = c.n_realizations;
  m.seed = c.seed.value_or(kDefaultSeed);
  m.workers = c.workers;
  m.window_radius_m = c.window_radius_m;
  return m;
}

std::string sweep_csv(const sweep::SweepResult& r) {
  std::ostringstream os;
  os << "axis,series,value,std_err\n";
  for (std::size_t i = 0; i < r.axis_values.size(); ++i) {
    for (const auto& [name, pts] : r.series) {
      os << num(r.axis_values[i]) << ',' << name << ',' << prob(pts[i].value) << ','
         << prob(pts[i].std_err) << '\n';
    }
  }
  return os.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file " + *path);
  file << text;
  file.close();
  if (!file) throw IoError("failed writing output file " + *path);
}

}  // namespace

bool NetworkFlags::any() const {
  return macro_tx_dbm || femto_tx_dbm || macro_density_per_km2 || femto_density_per_km2 || density_ratio ||
         alpha || pathloss_const_db || noise_dbm || inner_radius_m;
}

NetworkParams resolve_network(const RunConfig& config) {
  const NetworkFlags& f = config.network;
  if (config.config_path) {
    if (f.any()) throw ConfigError("give either --config or inline network flags, not both");
    std::ifstream in(*config.config_path);
    if (!in) throw ConfigError("cannot read config file " + *config.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    return params_from_json(doc);
  }
  if (f.femto_density_per_km2 && f.density_ratio)
    throw ConfigError("--femto-density and --ratio are mutually exclusive");
  NetworkParams p = reference_network(10.0, 400.0);
  if (f.macro_tx_dbm) p.macro.tx_power_dbm = *f.macro_tx_dbm;
  if (f.femto_tx_dbm) p.femto.tx_power_dbm = *f.femto_tx_dbm;
  if (f.macro_density_per_km2) p.macro.density_per_m2 = per_km2_to_per_m2(*f.macro_density_per_km2);
  p.femto.density_per_m2 = 10.0 * p.macro.density_per_m2;
  if (f.density_ratio) p.femto.density_per_m2 = *f.density_ratio * p.macro.density_per_m2;
  if (f.femto_density_per_km2) p.femto.density_per_m2 = per_km2_to_per_m2(*f.femto_density_per_km2);
  if (f.alpha) p.alpha = *f.alpha;
  if (f.pathloss_const_db) p.pathloss_const_db = *f.pathloss_const_db;
  if (f.noise_dbm) p.noise_dbm = *f.noise_dbm;
  if (f.inner_radius_m) p.inner_radius_m = *f.inner_radius_m;
  validate(p);
  return p;
}

std::string cmd_analytic(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto grid = threshold_grid(config);
  const std::vector<Scheme> schemes{Scheme::SingleTier, Scheme::Uniform, Scheme::CoverageOriented};
  const auto result = sweep::sweep_threshold(p, grid, schemes);
  const std::vector<Region> regions = p.inner_radius_m > 0.0
                                          ? std::vector<Region>{Region::Inner, Region::Outer, Region::Overall}
                                          : std::vector<Region>{Region::Overall};
  std::ostringstream os;
  os << "threshold_db,region,scheme,coverage,cdf\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (Region region : regions) {
      for (Scheme scheme : schemes) {
        const double v = result.at(sweep::series_name(Method::Analytic, scheme, region))[i].value;
        os << num(grid[i]) << ',' << to_string(region) << ',' << to_string(scheme) << ',' << prob(v) << ','
           << prob(1.0 - v) << '\n';
      }
    }
  }
  return os.str();
}

std::string cmd_simulate(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto grid = threshold_grid(config);
  const auto est = mc::estimate_coverage(p, grid, mc_config(config));
  std::ostringstream os;
  os << "threshold_db,region,coverage,std_err,n_samples\n";
  auto row = [&](double t, Region r, const mc::McEstimate& e) {
    os << num(t) << ',' << to_string(r) << ',' << prob(e.value) << ',' << prob(e.std_err) << ',' << e.n_samples
       << '\n';
  };
  for (const auto& te : est.per_threshold) {
    if (te.inner) row(te.threshold_db, Region::Inner, *te.inner);
    if (te.outer) row(te.threshold_db, Region::Outer, *te.outer);
    row(te.threshold_db, Region::Overall, te.overall);
  }
  return os.str();
}

std::string cmd_sweep_t(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto grid = threshold_grid(config);
  std::optional<mc::McConfig> m;
  if (config.with_mc) m = mc_config(config);
  return sweep_csv(sweep::sweep_threshold(
      p, grid, {Scheme::SingleTier, Scheme::Uniform, Scheme::CoverageOriented}, m));
}

std::string cmd_sweep_d(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto grid = radius_grid(config);
  std::optional<mc::McConfig> m;
  if (config.with_mc) m = mc_config(config);
  return sweep_csv(sweep::sweep_d(p, grid, config.threshold_db, m));
}

std::string cmd_optimal_d(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto grid = threshold_grid(config);
  std::ostringstream os;
  os << "threshold_db,d_star_m,coverage,boundary\n";
  for (double t : grid) {
    const auto best = sweep::optimal_d(p, t);
    os << num(t) << ',' << num(best.d_star_m) << ',' << prob(best.coverage_at_star) << ','
       << sweep::to_string(best.boundary) << '\n';
  }
  return os.str();
}

std::string cmd_compare(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const auto rows = sweep::compare_schemes(p, config.threshold_db, mc_config(config));
  std::ostringstream os;
  os << "scheme,method,coverage,std_err\n";
  for (const auto& r : rows) {
    os << to_string(r.scheme) << ",analytic," << prob(r.analytic) << ',' << prob(0.0) << '\n';
    os << to_string(r.scheme) << ",mc," << prob(r.mc) << ',' << prob(r.mc_std_err) << '\n';
  }
  return os.str();
}

std::string cmd_region_map(const RunConfig& config) {
  const NetworkParams p = resolve_network(config);
  const double window = config.window_radius_m > 0.0 ? config.window_radius_m : mc::default_window_radius(p);
  mc::Rng rng = mc::make_stream(config.seed.value_or(kDefaultSeed), 0);
  const auto r = mc::realize(p, window, rng);
  std::ostringstream os;
  os << "kind,x_m,y_m\n";
  for (const auto& m : r.macro.points) os << "macro," << coord(m.x) << ',' << coord(m.y) << '\n';
  for (std::size_t j = 0; j < r.femto.points.size(); ++j) {
    os << (r.femto_active[j] ? "femto_active," : "femto_inactive,") << coord(r.femto.points[j].x) << ','
       << coord(r.femto.points[j].y) << '\n';
  }
  os << "origin," << coord(0.0) << ',' << coord(0.0) << '\n';
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage of two-tier networks with distance-based femtocell deactivation", "femtocov"};
  app.require_subcommand(1);

  RunConfig config;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  NetworkFlags& nf = config.network;

  auto network_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON network description");
    sub->add_option("--macro-tx-dbm", nf.macro_tx_dbm, "macro transmit power [dBm]");
    sub->add_option("--femto-tx-dbm", nf.femto_tx_dbm, "femto transmit power [dBm]");
    sub->add_option("--macro-density", nf.macro_density_per_km2, "macro density [per km^2]");
    sub->add_option("--femto-density", nf.femto_density_per_km2, "femto density [per km^2]");
    sub->add_option("--ratio", nf.density_ratio, "femto/macro density ratio");
    sub->add_option("--alpha", nf.alpha, "path-loss exponent");
    sub->add_option("--pathloss-db", nf.pathloss_const_db, "path-loss constant at 1 m [dB]");
    sub->add_option("--noise-dbm", nf.noise_dbm, "noise power [dBm]");
    sub->add_option("--inner-radius", nf.inner_radius_m, "inner-region radius D [m]");
    sub->add_option("--out", out_path, "output CSV path (stdout when omitted)");
  };
  auto t_grid_opts = [&](CLI::App* sub) {
    sub->add_option("--t-min", config.t_min_db, "lowest SINR threshold [dB]");
    sub->add_option("--t-max", config.t_max_db, "highest SINR threshold [dB]");
    sub->add_option("--t-step", config.t_step_db, "threshold step [dB]");
  };
  auto mc_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "base random seed");
    sub->add_option("--n", config.n_realizations, "number of realizations");
    sub->add_option("--workers", config.workers, "worker threads (0 = all cores)");
    sub->add_option("--window", config.window_radius_m, "simulation window radius [m]");
  };

  auto* analytic = app.add_subcommand("analytic", "analytic SINR CCDF/CDF over a threshold grid");
  network_opts(analytic);
  t_grid_opts(analytic);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage over a threshold grid");
  network_opts(simulate);
  t_grid_opts(simulate);
  mc_opts(simulate);

  auto* sweep_t = app.add_subcommand("sweep-t", "threshold sweep for all schemes, optional MC series");
  network_opts(sweep_t);
  t_grid_opts(sweep_t);
  mc_opts(sweep_t);
  sweep_t->add_flag("--mc", config.with_mc, "attach Monte Carlo series");

  auto* sweep_d = app.add_subcommand("sweep-d", "overall coverage versus inner radius");
  network_opts(sweep_d);
  mc_opts(sweep_d);
  sweep_d->add_option("--threshold", config.threshold_db, "SINR threshold [dB]");
  sweep_d->add_option("--d-min", config.d_min_m, "smallest D [m]");
  sweep_d->add_option("--d-max", config.d_max_m, "largest D [m]");
  sweep_d->add_option("--d-step", config.d_step_m, "D step [m]");
  sweep_d->add_flag("--mc", config.with_mc, "attach Monte Carlo series");

  auto* optimal = app.add_subcommand("optimal-d", "coverage-maximising inner radius per threshold");
  network_opts(optimal);
  t_grid_opts(optimal);

  auto* compare = app.add_subcommand("compare", "single-tier vs uniform vs coverage-oriented");
  network_opts(compare);
  mc_opts(compare);
  compare->add_option("--threshold", config.threshold_db, "SINR threshold [dB]");

  auto* region_map = app.add_subcommand("region-map", "dump one realization's BS layout");
  network_opts(region_map);
  region_map->add_option("--seed", seed, "base random seed");
  region_map->add_option("--window", config.window_radius_m, "femto window radius [m]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (!config_path.empty()) config.config_path = config_path;
  if (!out_path.empty()) config.out_path = out_path;
  auto* chosen = app.get_subcommands().front();
  if (const auto* opt = chosen->get_option_no_throw("--seed"); opt != nullptr && opt->count() > 0) config.seed = seed;

  const bool random = chosen == simulate || chosen == compare || chosen == region_map ||
                      ((chosen == sweep_t || chosen == sweep_d) && config.with_mc);
  try {
    std::string csv;
    if (chosen == analytic) csv = cmd_analytic(config);
    else if (chosen == simulate) csv = cmd_simulate(config);
    else if (chosen == sweep_t) csv = cmd_sweep_t(config);
    else if (chosen == sweep_d) csv = cmd_sweep_d(config);
    else if (chosen == optimal) csv = cmd_optimal_d(config);
    else if (chosen == compare) csv = cmd_compare(config);
    else csv = cmd_region_map(config);
    if (random) err << "seed: " << config.seed.value_or(kDefaultSeed) << '\n';
    write_output(config.out_path, csv, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const mc::McError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}

}  // namespace femtocov::cli
