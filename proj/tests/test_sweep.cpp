#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "femtocov/analytic.hpp"
#include "femtocov/sweep.hpp"

using namespace femtocov;
using namespace femtocov::sweep;

namespace {

const std::vector<Scheme> kAllSchemes{Scheme::SingleTier, Scheme::Uniform, Scheme::CoverageOriented};

mc::McConfig mc_cfg(std::size_t n, std::uint64_t seed) {
  mc::McConfig c;
  c.n_realizations = n;
  c.seed = seed;
  c.workers = 0;
  return c;
}

std::pair<double, double> wilson_band(double p_hat, std::size_t n, double z) {
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double centre = (p_hat + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
  const double half = z / (1.0 + z2 / nn) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
  return {centre - half, centre + half};
}

}  // namespace

TEST_CASE("grids") {
  const auto g = linear_grid(-10.0, 20.0, 1.0);
  CHECK(g.size() == 31);
  CHECK(g.front() == -10.0);
  CHECK(g.back() == 20.0);
  CHECK(linear_grid(0.0, 1.0, 0.1).size() == 11);
  CHECK(linear_grid(5.0, 5.0, 1.0).size() == 1);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), std::invalid_argument);
  const auto lg = log_grid(10.0, 1000.0, 3);
  CHECK(lg[1] == doctest::Approx(100.0));
  CHECK(lg.back() == 1000.0);
}

TEST_CASE("threshold sweep") {
  const NetworkParams p = reference_network(10.0, 400.0);
  const auto grid = linear_grid(-10.0, 20.0, 1.0);
  const auto r = sweep_threshold(p, grid, kAllSchemes);
  CHECK(r.axis_name == "threshold_db");
  CHECK(r.series.size() == 9);
  for (const auto& [name, pts] : r.series) {
    REQUIRE(pts.size() == grid.size());
    double last_cdf = 0.0;
    for (const auto& cp : pts) {
      CHECK(cp.value >= 0.0);
      CHECK(cp.value <= 1.0);
      CHECK(1.0 - cp.value >= last_cdf - 1e-15);
      last_cdf = 1.0 - cp.value;
    }
  }
  // Coverage-oriented overall CDF below the uniform CDF at 0 dB.
  const auto zero = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 0.0) - grid.begin());
  CHECK(1.0 - r.at("analytic_coverage_oriented_overall")[zero].value <
        1.0 - r.at("analytic_uniform_overall")[zero].value);
  CHECK(r.at("analytic_coverage_oriented_outer")[zero].value == r.at("analytic_uniform_outer")[zero].value);

  SUBCASE("lambda2 = 0 two-tier equals single tier") {
    const auto solo = sweep_threshold(analytic::single_tier(p), grid, kAllSchemes);
    const auto& a = solo.at("analytic_single_tier_overall");
    const auto& b = solo.at("analytic_uniform_overall");
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[i].value == b[i].value);
  }
  SUBCASE("D = 0 only has overall series") {
    const auto u = sweep_threshold(reference_network(10.0, 0.0), {0.0, 5.0}, kAllSchemes);
    CHECK(u.series.size() == 3);
    CHECK(!u.contains("analytic_uniform_inner"));
  }
  CHECK_THROWS_AS(sweep_threshold(p, {}, kAllSchemes), std::invalid_argument);
  CHECK_THROWS_AS(sweep_threshold(p, {0.0, 0.0}, kAllSchemes), std::invalid_argument);
  CHECK_THROWS_AS(sweep_threshold(p, {1.0, 0.0}, kAllSchemes), std::invalid_argument);
  CHECK_THROWS_AS(r.at("nope"), std::out_of_range);
}

TEST_CASE("radius sweep") {
  const NetworkParams p = reference_network(10.0, 400.0);
  const auto grid = linear_grid(0.0, 1000.0, 25.0);
  const auto r = sweep_d(p, grid, 0.0);
  CHECK(r.axis_name == "inner_radius_m");
  const auto& overall = r.at("analytic_overall");
  const auto& uniform = r.at("analytic_uniform");
  const auto& single = r.at("analytic_single_tier");
  CHECK(overall[0].value == uniform[0].value);
  const auto at500 = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 500.0) - grid.begin());
  CHECK(std::abs(overall[at500].value - 0.56) <= 0.02);
  CHECK(std::abs(uniform[at500].value - 0.53) <= 0.02);
  CHECK(std::abs(single[at500].value - 0.50) <= 0.02);
  CHECK(overall[at500].value > uniform[at500].value);
  CHECK(uniform[at500].value > single[at500].value);

  const auto dense = sweep_d(reference_network(40.0, 0.0), grid, 0.0);
  double best = 0.0;
  for (const auto& cp : dense.at("analytic_overall")) best = std::max(best, cp.value);
  CHECK(std::abs(best - 0.61) <= 0.02);
  CHECK(std::abs(dense.at("analytic_uniform")[0].value - 0.55) <= 0.02);

  CHECK_THROWS_AS(sweep_d(p, {}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sweep_d(p, {-1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("optimal radius search") {
  const NetworkParams p = reference_network(10.0, 400.0);
  const auto best0 = optimal_d(p, 0.0);
  CHECK(best0.boundary == Boundary::None);
  for (const auto& [d, c] : best0.search_trace) CHECK(best0.coverage_at_star >= c - 1e-10);

  // Exhaustive verification grid over the search range.
  const auto verify = log_grid(10.0, max_inner_radius(p.macro.density_per_m2), 200);
  for (double d : verify) {
    NetworkParams q = p;
    q.inner_radius_m = d;
    CHECK(best0.coverage_at_star >= analytic::coverage_overall(1.0, q) - 1e-6);
  }

  // Trends across threshold and density ratio.
  const auto best5 = optimal_d(p, 5.0);
  CHECK(best5.d_star_m < best0.d_star_m);
  const auto dense0 = optimal_d(reference_network(40.0, 0.0), 0.0);
  CHECK(dense0.d_star_m < best0.d_star_m);

  // Agreement with a D sweep: the grid maximum lies within one step of d_star.
  const auto grid = linear_grid(0.0, 1000.0, 25.0);
  const auto sweep = sweep_d(p, grid, 0.0).at("analytic_overall");
  const auto arg = static_cast<std::size_t>(
      std::max_element(sweep.begin(), sweep.end(), [](auto& a, auto& b) { return a.value < b.value; }) - sweep.begin());
  CHECK(std::abs(grid[arg] - best0.d_star_m) <= 25.0);

  SUBCASE("boundary optimum is flagged") {
    SearchConfig narrow;
    narrow.d_lo_m = 10.0;
    narrow.d_hi_m = 200.0;
    const auto b = optimal_d(p, 0.0, narrow);
    CHECK(b.boundary == Boundary::Upper);
    CHECK(b.d_star_m == doctest::Approx(200.0).epsilon(0.01));
  }
  SearchConfig bad;
  bad.d_hi_m = 1e6;
  CHECK_THROWS_AS(optimal_d(p, 0.0, bad), std::invalid_argument);
  bad = {};
  bad.d_lo_m = 0.0;
  CHECK_THROWS_AS(optimal_d(p, 0.0, bad), std::invalid_argument);
}

TEST_CASE("scheme comparison") {
  const NetworkParams p = reference_network(10.0, 500.0);
  const auto rows = compare_schemes(p, 0.0, mc_cfg(10000, 42));
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    INFO(to_string(r.scheme) << " analytic=" << r.analytic << " mc=" << r.mc);
    CHECK(r.analytic >= 0.0);
    CHECK(r.analytic <= 1.0);
    CHECK(r.mc >= 0.0);
    CHECK(r.mc <= 1.0);
    CHECK(r.mc_std_err > 0.0);
    CHECK(std::abs(r.analytic - r.mc) <= std::max(3.0 * r.mc_std_err, 0.03));
  }
  CHECK(rows[2].analytic > rows[1].analytic);
  CHECK(rows[1].analytic > rows[0].analytic);
}

TEST_CASE("analytic curves sit inside the MC 99% band") {
  const NetworkParams p = reference_network(10.0, 400.0);
  const auto grid = linear_grid(-10.0, 20.0, 1.0);
  const std::vector<Scheme> schemes{Scheme::SingleTier, Scheme::Uniform, Scheme::CoverageOriented};
  const auto r = sweep_threshold(p, grid, schemes, mc_cfg(10000, 42));
  for (Scheme scheme : schemes)
  for (Region region : {Region::Inner, Region::Outer, Region::Overall}) {
    const auto& a = r.at(series_name(Method::Analytic, scheme, region));
    const auto& m = r.at(series_name(Method::MonteCarlo, scheme, region));
    std::size_t inside = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(m[i].method == Method::MonteCarlo);
      REQUIRE(m[i].n_samples > 0);
      const auto [lo, hi] = wilson_band(m[i].value, m[i].n_samples, 2.576);
      inside += a[i].value >= lo && a[i].value <= hi;
    }
    INFO("scheme=" << to_string(scheme) << " region=" << to_string(region) << " inside=" << inside << "/" << grid.size());
    CHECK(static_cast<double>(inside) >= 0.9 * static_cast<double>(grid.size()));
  }
}
