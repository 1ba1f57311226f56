#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtocov/params.hpp"

namespace femtocov::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network parameters given as individual flags. Unset fields fall back to
/// the reference setup (ratio 10, D = 400 m).
struct NetworkFlags {
  std::optional<double> macro_tx_dbm;
  std::optional<double> femto_tx_dbm;
  std::optional<double> macro_density_per_km2;
  std::optional<double> femto_density_per_km2;
  std::optional<double> density_ratio;
  std::optional<double> alpha;
  std::optional<double> pathloss_const_db;
  std::optional<double> noise_dbm;
  std::optional<double> inner_radius_m;

  bool any() const;
};

struct RunConfig {
  std::optional<std::string> config_path;
  NetworkFlags network;
  std::optional<std::string> out_path;  // stdout when unset
  std::optional<std::uint64_t> seed;    // 42 when unset
  std::size_t n_realizations = 10000;
  unsigned workers = 1;
  double window_radius_m = 0.0;
  double t_min_db = -10.0;
  double t_max_db = 20.0;
  double t_step_db = 1.0;
  double d_min_m = 0.0;
  double d_max_m = 1000.0;
  double d_step_m = 25.0;
  double threshold_db = 0.0;
  bool with_mc = false;
};

constexpr std::uint64_t kDefaultSeed = 42;

/// Exactly one network source: either --config or inline flags.
NetworkParams resolve_network(const RunConfig& config);

// Each command returns the CSV text; nothing is written on failure.
std::string cmd_analytic(const RunConfig& config);
std::string cmd_simulate(const RunConfig& config);
std::string cmd_sweep_t(const RunConfig& config);
std::string cmd_sweep_d(const RunConfig& config);
std::string cmd_optimal_d(const RunConfig& config);
std::string cmd_compare(const RunConfig& config);
std::string cmd_region_map(const RunConfig& config);

/// Parses argv, dispatches the subcommand and writes its CSV. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace femtocov::cli
