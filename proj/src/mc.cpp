#include "femtocov/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace femtocov::mc {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

void append_annulus(std::vector<Point>& out, double density, double r_in, double r_out, Rng& rng) {
  if (density <= 0.0 || r_out <= r_in) return;
  const double area = kPi * (r_out * r_out - r_in * r_in);
  const auto count = std::poisson_distribution<std::int64_t>(density * area)(rng);
  out.reserve(out.size() + static_cast<std::size_t>(count));
  const double in2 = r_in * r_in;
  const double span2 = r_out * r_out - in2;
  for (std::int64_t i = 0; i < count; ++i) {
    const double radius = std::min(std::sqrt(in2 + span2 * uniform01(rng)), r_out);
    const double theta = 2.0 * kPi * uniform01(rng);
    out.push_back({radius * std::cos(theta), radius * std::sin(theta)});
  }
}

// Uniform bucket grid over the macro window for radius-D proximity queries.
class MacroGrid {
 public:
  MacroGrid(const PointPattern& macro, double d) : half_(macro.window_radius_m) {
    cell_ = std::max(d, 2.0 * half_ / 512.0);
    dim_ = std::max<long>(1, static_cast<long>(std::ceil(2.0 * half_ / cell_)));
    start_.assign(static_cast<std::size_t>(dim_ * dim_) + 1, 0);
    std::vector<std::size_t> cell_of(macro.points.size());
    for (std::size_t i = 0; i < macro.points.size(); ++i) {
      cell_of[i] = index(cell_coord(macro.points[i].x), cell_coord(macro.points[i].y));
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    members_.resize(macro.points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < macro.points.size(); ++i) members_[fill[cell_of[i]]++] = macro.points[i];
  }

  /// True if some macro lies strictly closer than d to q. Requires d <= cell size.
  bool any_within(Point q, double d) const {
    const long cx = cell_coord(q.x);
    const long cy = cell_coord(q.y);
    const double d2 = d * d;
    for (long y = std::max(0L, cy - 1); y <= std::min(dim_ - 1, cy + 1); ++y) {
      for (long x = std::max(0L, cx - 1); x <= std::min(dim_ - 1, cx + 1); ++x) {
        const std::size_t c = index(x, y);
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
          const double dx = members_[k].x - q.x;
          const double dy = members_[k].y - q.y;
          if (dx * dx + dy * dy < d2) return true;
        }
      }
    }
    return false;
  }

 private:
  long cell_coord(double v) const {
    return std::clamp(static_cast<long>(std::floor((v + half_) / cell_)), 0L, dim_ - 1);
  }
  std::size_t index(long x, long y) const { return static_cast<std::size_t>(y * dim_ + x); }

  double half_;
  double cell_;
  long dim_;
  std::vector<std::size_t> start_;
  std::vector<Point> members_;
};

void classify(NetworkRealization& r, std::size_t first_femto, Activation activation) {
  const double d = r.inner_radius_m;
  r.femto_active.resize(r.femto.points.size(), 1);
  if (activation == Activation::AllActive || d <= 0.0) {
    std::fill(r.femto_active.begin() + static_cast<std::ptrdiff_t>(first_femto), r.femto_active.end(), 1);
  } else {
    const MacroGrid grid(r.macro, d);
    for (std::size_t j = first_femto; j < r.femto.points.size(); ++j)
      r.femto_active[j] = grid.any_within(r.femto.points[j], d) ? 0 : 1;
  }
  bool inner = false;
  for (const Point& m : r.macro.points) inner = inner || (m.x * m.x + m.y * m.y < d * d);
  r.origin_region = inner ? RegionLabel::Inner : RegionLabel::Outer;
}

}  // namespace

void apply_activation(NetworkRealization& r, Activation activation) {
  r.femto_active.clear();
  classify(r, 0, activation);
}

std::size_t NetworkRealization::active_femto_count() const {
  return static_cast<std::size_t>(std::count(femto_active.begin(), femto_active.end(), 1));
}

Rng make_stream(std::uint64_t base_seed, std::uint64_t index, std::uint64_t attempt) {
  const std::uint64_t key = splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)) ^
                            splitmix64(attempt * 0xd1b54a32d192ed03ULL + 1);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(attempt)};
  return Rng(seq);
}

double default_window_radius(const NetworkParams& p) {
  return 10.0 / std::sqrt(kPi * p.macro.density_per_m2);
}

PointPattern sample_ppp(double density_per_m2, double window_radius_m, Rng& rng) {
  if (density_per_m2 < 0.0) throw std::invalid_argument("sample_ppp: density must be >= 0");
  if (!(window_radius_m > 0.0)) throw std::invalid_argument("sample_ppp: radius must be > 0");
  PointPattern out;
  out.window_radius_m = window_radius_m;
  append_annulus(out.points, density_per_m2, 0.0, window_radius_m, rng);
  return out;
}

std::vector<Point> sample_ppp_annulus(double density_per_m2, double r_in, double r_out, Rng& rng) {
  if (density_per_m2 < 0.0) throw std::invalid_argument("sample_ppp_annulus: density must be >= 0");
  if (r_in < 0.0 || r_out < r_in) throw std::invalid_argument("sample_ppp_annulus: need 0 <= r_in <= r_out");
  std::vector<Point> out;
  append_annulus(out, density_per_m2, r_in, r_out, rng);
  return out;
}

NetworkRealization realize(const NetworkParams& p, double window_radius_m, Rng& rng, Activation activation) {
  validate(p);
  const double min_radius = 5.0 / std::sqrt(kPi * p.macro.density_per_m2);
  if (window_radius_m < min_radius)
    throw std::invalid_argument("realize: window radius must be >= 5/sqrt(pi*lambda1)");
  NetworkRealization r;
  r.inner_radius_m = p.inner_radius_m;
  r.macro = sample_ppp(p.macro.density_per_m2, window_radius_m + p.inner_radius_m, rng);
  r.femto.window_radius_m = window_radius_m;
  append_annulus(r.femto.points, p.femto.density_per_m2, 0.0, window_radius_m, rng);
  classify(r, 0, activation);
  return r;
}

void extend_window(NetworkRealization& r, const NetworkParams& p, double new_radius_m, Rng& rng,
                   Activation activation) {
  const double old_radius = r.femto.window_radius_m;
  if (new_radius_m < old_radius) throw std::invalid_argument("extend_window: window can only grow");
  const double d = r.inner_radius_m;
  append_annulus(r.macro.points, p.macro.density_per_m2, old_radius + d, new_radius_m + d, rng);
  r.macro.window_radius_m = new_radius_m + d;
  const std::size_t first_new = r.femto.points.size();
  append_annulus(r.femto.points, p.femto.density_per_m2, old_radius, new_radius_m, rng);
  r.femto.window_radius_m = new_radius_m;
  // Existing femtos keep their decisions: their D-neighbourhood lies inside the old macro window.
  const RegionLabel region = r.origin_region;
  classify(r, first_new, activation);
  r.origin_region = region;
}

SinrSample sinr_at_origin(const NetworkRealization& r, const NetworkParams& p, Rng& rng) {
  const DerivedParams d = derive(p);
  Rng macro_fading(rng());
  Rng femto_fading(rng());
  std::exponential_distribution<double> fade(1.0);
  const double half_alpha = 0.5 * d.alpha;

  auto path_gain = [half_alpha](const Point& q) {
    const double r2 = q.x * q.x + q.y * q.y;
    return half_alpha == 2.0 ? 1.0 / (r2 * r2) : std::pow(r2, -half_alpha);
  };

  // Association on long-term power; fading only enters the SINR.
  double best = -1.0;
  int best_tier = 0;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < r.macro.points.size(); ++i) {
    const double rx = d.p1_linear * path_gain(r.macro.points[i]);
    if (rx > best) { best = rx; best_tier = 1; best_index = i; }
  }
  for (std::size_t j = 0; j < r.femto.points.size(); ++j) {
    if (!r.femto_active[j]) continue;
    const double rx = d.p2_linear * path_gain(r.femto.points[j]);
    if (rx > best) { best = rx; best_tier = 2; best_index = j; }
  }
  if (best_tier == 0) throw EmptyRealization();

  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t i = 0; i < r.macro.points.size(); ++i) {
    const double rx = d.p1_linear * fade(macro_fading) * path_gain(r.macro.points[i]);
    if (best_tier == 1 && i == best_index) signal = rx; else interference += rx;
  }
  for (std::size_t j = 0; j < r.femto.points.size(); ++j) {
    const double h = fade(femto_fading);
    if (!r.femto_active[j]) continue;
    const double rx = d.p2_linear * h * path_gain(r.femto.points[j]);
    if (best_tier == 2 && j == best_index) signal = rx; else interference += rx;
  }
  return {signal / (interference + d.noise_watts), r.origin_region, best_tier, best_index};
}

SampleSet simulate(const NetworkParams& p, const McConfig& config) {
  validate(p);
  const double window = config.window_radius_m > 0.0 ? config.window_radius_m : default_window_radius(p);
  const std::size_t n = config.n_realizations;
  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

  SampleSet out;
  out.samples.resize(n);
  std::vector<std::uint32_t> redraws(n, 0);
  const std::size_t max_redraws = n / 1000;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> total_redraws{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < n && !abort; i = next++) {
        for (std::uint64_t attempt = 0;; ++attempt) {
          Rng rng = make_stream(config.seed, i, attempt);
          NetworkRealization r = realize(p, window, rng, config.activation);
          try {
            out.samples[i] = sinr_at_origin(r, p, rng);
            break;
          } catch (const EmptyRealization&) {
            ++redraws[i];
            if (++total_redraws > max_redraws) {
              throw McError("more than 0.1% of realizations had no serving BS; macro density too low");
            }
          }
        }
      }
    } catch (...) {
      abort = true;
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  for (auto c : redraws) out.n_redrawn += c;
  return out;
}

CoverageEstimate tally(std::span<const SinrSample> samples, std::span<const double> thresholds_db) {
  CoverageEstimate out;
  for (const auto& s : samples) (s.region == RegionLabel::Inner ? out.n_inner : out.n_outer)++;
  auto make = [](std::size_t hits, std::size_t n, std::size_t n_inner, std::size_t n_outer) {
    McEstimate e;
    e.n_samples = n;
    e.n_inner = n_inner;
    e.n_outer = n_outer;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    e.std_err = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    return e;
  };
  for (double t_db : thresholds_db) {
    const double t = db_to_linear(t_db);
    std::size_t hits_inner = 0, hits_outer = 0;
    for (const auto& s : samples) {
      if (s.sinr_linear > t) (s.region == RegionLabel::Inner ? hits_inner : hits_outer)++;
    }
    ThresholdEstimate te;
    te.threshold_db = t_db;
    const std::size_t n = out.n_inner + out.n_outer;
    if (n > 0) te.overall = make(hits_inner + hits_outer, n, out.n_inner, out.n_outer);
    if (out.n_inner > 0) te.inner = make(hits_inner, out.n_inner, out.n_inner, 0);
    if (out.n_outer > 0) te.outer = make(hits_outer, out.n_outer, 0, out.n_outer);
    out.per_threshold.push_back(te);
  }
  return out;
}

CoverageEstimate estimate_coverage(const NetworkParams& p, std::span<const double> thresholds_db,
                                   const McConfig& config) {
  if (config.n_realizations < 100) throw std::invalid_argument("estimate_coverage: need at least 100 realizations");
  const SampleSet set = simulate(p, config);
  CoverageEstimate out = tally(set.samples, thresholds_db);
  out.n_redrawn = set.n_redrawn;
  return out;
}

}  // namespace femtocov::mc
