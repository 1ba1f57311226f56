#include "femtocov/params.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>

namespace femtocov {

namespace {

constexpr std::array<std::string_view, 8> kConfigKeys = {
    "macro_tx_dbm",       "femto_tx_dbm", "macro_density_per_km2", "femto_density_per_km2",
    "alpha",              "pathloss_const_db", "noise_dbm",        "inner_radius_m"};

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ParamError(field, "must be finite");
}

}  // namespace

double DerivedParams::macro_weight() const {
  return lambda1 * std::pow(p1_linear, 2.0 / alpha);
}

double DerivedParams::femto_weight() const {
  return lambda2 * std::pow(p2_linear, 2.0 / alpha);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double per_km2_to_per_m2(double per_km2) { return per_km2 * 1e-6; }

double per_m2_to_per_km2(double per_m2) { return per_m2 * 1e6; }

double max_inner_radius(double macro_density_per_m2) {
  return 10.0 / std::sqrt(std::numbers::pi * macro_density_per_m2);
}

void validate(const NetworkParams& p) {
  require_finite(p.macro.tx_power_dbm, "macro_tx_dbm");
  require_finite(p.femto.tx_power_dbm, "femto_tx_dbm");
  require_finite(p.macro.density_per_m2, "macro_density_per_km2");
  require_finite(p.femto.density_per_m2, "femto_density_per_km2");
  require_finite(p.alpha, "alpha");
  require_finite(p.pathloss_const_db, "pathloss_const_db");
  require_finite(p.noise_dbm, "noise_dbm");
  require_finite(p.inner_radius_m, "inner_radius_m");

  if (!(p.macro.density_per_m2 > 0.0))
    throw ParamError("macro_density_per_km2", "must be > 0");
  if (p.femto.density_per_m2 < 0.0)
    throw ParamError("femto_density_per_km2", "must be >= 0");
  if (!(p.alpha > 2.0)) throw ParamError("alpha", "must be > 2");
  if (p.inner_radius_m < 0.0) throw ParamError("inner_radius_m", "must be >= 0");
  const double cap = max_inner_radius(p.macro.density_per_m2);
  if (p.inner_radius_m > cap)
    throw ParamError("inner_radius_m", "must be <= 10/sqrt(pi*lambda1) = " + std::to_string(cap));
}

DerivedParams derive(const NetworkParams& p) {
  validate(p);
  DerivedParams d;
  const double l0 = db_to_linear(p.pathloss_const_db);
  d.p1_linear = dbm_to_watts(p.macro.tx_power_dbm) * l0;
  d.p2_linear = dbm_to_watts(p.femto.tx_power_dbm) * l0;
  d.alpha = p.alpha;
  d.lambda1 = p.macro.density_per_m2;
  d.lambda2 = p.femto.density_per_m2;
  d.inner_radius_m = p.inner_radius_m;
  d.xi = d.macro_weight() + d.femto_weight();
  d.noise_watts = dbm_to_watts(p.noise_dbm);
  d.breakpoint_t = p.inner_radius_m > 0.0 ? d.p1_linear / std::pow(p.inner_radius_m, p.alpha)
                                          : std::numeric_limits<double>::infinity();
  return d;
}

NetworkParams reference_network(double density_ratio, double inner_radius_m) {
  NetworkParams p;
  p.macro = {46.0, per_km2_to_per_m2(1.0)};
  p.femto = {20.0, per_km2_to_per_m2(density_ratio)};
  p.alpha = 4.0;
  p.pathloss_const_db = -34.0;
  p.noise_dbm = -104.0;
  p.inner_radius_m = inner_radius_m;
  return p;
}

NetworkParams params_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParamError("<root>", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (auto k : kConfigKeys) known = known || key == k;
    if (!known) throw ParamError(key, "unknown key");
    if (!value.is_number()) throw ParamError(key, "must be a number");
  }
  for (auto k : kConfigKeys) {
    if (!doc.contains(std::string(k))) throw ParamError(std::string(k), "missing key");
  }
  NetworkParams p;
  p.macro.tx_power_dbm = doc.at("macro_tx_dbm").get<double>();
  p.femto.tx_power_dbm = doc.at("femto_tx_dbm").get<double>();
  p.macro.density_per_m2 = per_km2_to_per_m2(doc.at("macro_density_per_km2").get<double>());
  p.femto.density_per_m2 = per_km2_to_per_m2(doc.at("femto_density_per_km2").get<double>());
  p.alpha = doc.at("alpha").get<double>();
  p.pathloss_const_db = doc.at("pathloss_const_db").get<double>();
  p.noise_dbm = doc.at("noise_dbm").get<double>();
  p.inner_radius_m = doc.at("inner_radius_m").get<double>();
  validate(p);
  return p;
}

nlohmann::json params_to_json(const NetworkParams& p) {
  return {
      {"macro_tx_dbm", p.macro.tx_power_dbm},
      {"femto_tx_dbm", p.femto.tx_power_dbm},
      {"macro_density_per_km2", per_m2_to_per_km2(p.macro.density_per_m2)},
      {"femto_density_per_km2", per_m2_to_per_km2(p.femto.density_per_m2)},
      {"alpha", p.alpha},
      {"pathloss_const_db", p.pathloss_const_db},
      {"noise_dbm", p.noise_dbm},
      {"inner_radius_m", p.inner_radius_m},
  };
}

}  // namespace femtocov
