#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace femtocov {

/// Thrown when a parameter violates its bound. `field()` names the offending key.
class ParamError : public std::invalid_argument {
 public:
  ParamError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct TierParams {
  double tx_power_dbm = 0.0;
  double density_per_m2 = 0.0;
};

/// Two-tier network description in canonical units (meters, per-m^2 densities).
/// Power quantities stay in dB/dBm here; `derive` converts them to linear.
struct NetworkParams {
  TierParams macro;
  TierParams femto;
  double alpha = 4.0;
  double pathloss_const_db = 0.0;
  double noise_dbm = 0.0;
  double inner_radius_m = 0.0;
};

/// Linear quantities computed once from NetworkParams.
struct DerivedParams {
  double p1_linear = 0.0;   // P_tx,1 * L0
  double p2_linear = 0.0;   // P_tx,2 * L0
  double xi = 0.0;          // lambda1 p1^(2/alpha) + lambda2 p2^(2/alpha)
  double noise_watts = 0.0;
  double breakpoint_t = 0.0;  // p1 / D^alpha, +inf for D = 0

  // Copied through so analytic kernels need only this struct.
  double alpha = 4.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double inner_radius_m = 0.0;

  double macro_weight() const;  // lambda1 p1^(2/alpha)
  double femto_weight() const;  // lambda2 p2^(2/alpha)
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);
double per_km2_to_per_m2(double per_km2);
double per_m2_to_per_km2(double per_m2);

/// Largest admissible inner radius, 10 / sqrt(pi lambda1).
double max_inner_radius(double macro_density_per_m2);

/// Throws ParamError on the first violated bound.
void validate(const NetworkParams& p);

DerivedParams derive(const NetworkParams& p);

/// Evaluation setup: 46/20 dBm, 1 macro per km^2, L0 = -34 dB, alpha = 4,
/// noise -104 dBm. Femto density is `density_ratio` times the macro density.
NetworkParams reference_network(double density_ratio, double inner_radius_m);

/// Strict JSON ingestion: every key required, unknown keys rejected.
/// Densities are given per km^2.
NetworkParams params_from_json(const nlohmann::json& doc);
nlohmann::json params_to_json(const NetworkParams& p);

}  // namespace femtocov
