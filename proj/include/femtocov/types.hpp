#pragma once

#include <cstddef>
#include <string_view>

namespace femtocov {

/// Location of the typical user relative to the union of radius-D discs around macro BSs.
enum class RegionLabel { Inner, Outer };

/// RegionLabel plus the unconditioned (pooled) case.
enum class Region { Inner, Outer, Overall };

enum class Method { Analytic, MonteCarlo };

/// Deployment being evaluated.
///  SingleTier       macro BSs only.
///  Uniform          every femto BS active.
///  CoverageOriented femto BSs within D of a macro BS are switched off.
enum class Scheme { SingleTier, Uniform, CoverageOriented };

struct CoveragePoint {
  double threshold_db = 0.0;
  double value = 0.0;
  Region region = Region::Overall;
  Method method = Method::Analytic;
  double std_err = 0.0;
  std::size_t n_samples = 0;
};

constexpr Region to_region(RegionLabel r) {
  return r == RegionLabel::Inner ? Region::Inner : Region::Outer;
}

constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::Inner: return "inner";
    case Region::Outer: return "outer";
    case Region::Overall: return "overall";
  }
  return "";
}

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::SingleTier: return "single_tier";
    case Scheme::Uniform: return "uniform";
    case Scheme::CoverageOriented: return "coverage_oriented";
  }
  return "";
}

constexpr std::string_view to_string(Method m) {
  return m == Method::Analytic ? "analytic" : "mc";
}

}  // namespace femtocov
