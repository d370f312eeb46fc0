#include "finsler/chords.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsler/error.hpp"
#include "finsler/rng.hpp"
#include "finsler/simd/kernels.hpp"

namespace finsler::chords {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOnChord = 1e-12;

void check_query_point(const ChordSet& chords, PlanePoint z) {
  if (!(z.x * z.x + z.y * z.y < 1.0)) fail(ErrorKind::InvalidArgument, "query point must lie inside the open unit disk");
  for (std::size_t i = 0; i < chords.size(); ++i) {
    const double o = z.x * chords.sin()[i] - z.y * chords.cos()[i];
    if (std::abs(o - chords.p()[i]) <= kOnChord) fail(ErrorKind::NonGenericPoint, "query point lies on a chord");
  }
}

}  // namespace

ChordSet::ChordSet(const std::vector<LineCoord>& chords, std::uint64_t seed) : seed_(seed) {
  std::vector<std::pair<double, double>> keys;
  keys.reserve(chords.size());
  for (const auto& c : chords) {
    if (!std::isfinite(c.theta) || !(std::abs(c.p) < 1.0)) {
      fail(ErrorKind::InvalidArgument, "chords need finite theta and |p| < 1");
    }
    double t = std::fmod(c.theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    theta_.push_back(t);
    p_.push_back(c.p);
    cos_.push_back(std::cos(t));
    sin_.push_back(std::sin(t));
    keys.push_back(t >= std::numbers::pi ? std::pair{t - std::numbers::pi, -c.p} : std::pair{t, c.p});
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) fail(ErrorKind::InvalidArgument, "duplicate chord");
}

ChordSet sample_chords(std::size_t n, std::uint64_t seed) {
  const rng::CounterRng g(seed);
  ChordSet set;
  set.seed_ = seed;
  set.theta_.resize(n);
  set.p_.resize(n);
  set.cos_.resize(n);
  set.sin_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * g.open01(2 * k);
    set.theta_[k] = t;
    set.p_[k] = g.uniform(2 * k + 1, -1.0, 1.0);
    set.cos_[k] = std::cos(t);
    set.sin_[k] = std::sin(t);
  }
  return set;
}

std::uint64_t separation_distance(const ChordSet& chords, PlanePoint x, PlanePoint y) {
  check_query_point(chords, x);
  check_query_point(chords, y);
  return simd::kernels().count_separating(x.x, x.y, y.x, y.y, chords.p().data(), chords.cos().data(),
                                          chords.sin().data(), chords.size());
}

bool chords_cross(LineCoord a, LineCoord b) noexcept {
  const double ca = std::cos(a.theta), sa = std::sin(a.theta);
  const double cb = std::cos(b.theta), sb = std::sin(b.theta);
  const double cc = ca * cb + sa * sb;
  const double lhs = ((a.p * a.p + b.p * b.p) - (2.0 * a.p) * (b.p * cc)) + cc * cc;
  return lhs < 1.0;
}

std::uint64_t crossing_area(const ChordSet& chords) {
  const auto& k = simd::kernels();
  const std::size_t n = chords.size();
  const double* p = chords.p().data();
  const double* c = chords.cos().data();
  const double* s = chords.sin().data();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    total += k.count_crossings_with(p[i], c[i], s[i], p + i + 1, c + i + 1, s + i + 1, n - i - 1);
  }
  return total;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) noexcept {
  return rng::mix64(rng::mix64(seed) ^ rng::mix64(0x9e37ULL * n + 1) ^ rng::mix64(~static_cast<std::uint64_t>(trial)));
}

ExperimentReport convergence_experiment(const std::vector<std::size_t>& n_list, std::size_t trials, PlanePoint x,
                                        PlanePoint y, std::uint64_t seed, double tolerance) {
  ExperimentReport report;
  report.seed = seed;
  report.x = x;
  report.y = y;
  report.tolerance = tolerance;
  const double target_dist = std::hypot(x.x - y.x, x.y - y.y) / std::numbers::pi;
  for (const std::size_t n : n_list) {
    ConvergenceSummary s;
    s.n = n;
    s.trials = trials;
    s.target_dist = target_dist;
    s.target_area = 0.5;
    std::size_t within_d = 0, within_a = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ChordSet chords = sample_chords(n, trial_seed(seed, n, t));
      TrialRecord rec{n, t, 0.0, 0.0};
      if (n > 0) rec.dist_term = static_cast<double>(separation_distance(chords, x, y)) / static_cast<double>(n);
      if (n > 1) {
        rec.area_term = 2.0 * static_cast<double>(crossing_area(chords)) /
                        (static_cast<double>(n) * static_cast<double>(n - 1));
      }
      s.mean_dist += rec.dist_term;
      s.mean_area += rec.area_term;
      within_d += std::abs(rec.dist_term - target_dist) <= tolerance;
      within_a += std::abs(rec.area_term - 0.5) <= tolerance;
      report.trials.push_back(rec);
    }
    if (trials > 0) {
      const double tr = static_cast<double>(trials);
      s.mean_dist /= tr;
      s.mean_area /= tr;
      s.frac_dist_within = static_cast<double>(within_d) / tr;
      s.frac_area_within = static_cast<double>(within_a) / tr;
    }
    s.err_dist = std::abs(s.mean_dist - s.target_dist);
    s.err_area = std::abs(s.mean_area - s.target_area);
    report.summaries.push_back(s);
  }
  return report;
}

DeviationCheck chebyshev_check(const std::vector<double>& averages, double center, double p, double second_moment,
                               double eps) {
  if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "deviation threshold must be positive");
  DeviationCheck c;
  c.bound = p * second_moment / (eps * eps);
  if (averages.empty()) {
    c.within = true;
    return c;
  }
  std::size_t hits = 0;
  for (const double a : averages) hits += std::abs(a - center) >= eps;
  const double t = static_cast<double>(averages.size());
  c.deviation_probability = static_cast<double>(hits) / t;
  c.std_error = std::sqrt(c.deviation_probability * (1.0 - c.deviation_probability) / t);
  c.within = c.deviation_probability <= c.bound + 3.0 * c.std_error;
  return c;
}

WllnReport wlln_bound_check(std::size_t n, double eps, std::size_t trials, std::uint64_t seed,
                            std::uint64_t estimate_pairs) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "the weak-law check needs n >= 2");
  if (estimate_pairs == 0) fail(ErrorKind::InvalidArgument, "mean estimate needs at least one pair");
  WllnReport r;
  r.n = n;
  r.eps = eps;
  r.trials = trials;
  r.seed = seed;
  const double dn = static_cast<double>(n);
  r.pair_count = dn * (dn - 1.0) / 2.0;
  r.dependent_fraction = (2.0 * dn - 3.0) / r.pair_count;

  // Independent pairs of chords for the centering estimate.
  const rng::CounterRng g(seed, 0xe57);
  std::uint64_t crossing = 0;
  for (std::uint64_t k = 0; k < estimate_pairs; ++k) {
    const LineCoord a{kTwoPi * g.open01(4 * k), g.uniform(4 * k + 1, -1.0, 1.0)};
    const LineCoord b{kTwoPi * g.open01(4 * k + 2), g.uniform(4 * k + 3, -1.0, 1.0)};
    crossing += chords_cross(a, b);
  }
  const double m = static_cast<double>(estimate_pairs);
  r.mean_estimate = static_cast<double>(crossing) / m;
  r.mean_estimate_error = std::sqrt(r.mean_estimate * (1.0 - r.mean_estimate) / m);

  std::vector<double> averages(trials);
  const std::uint64_t trial_base = rng::mix64(seed ^ 0x3113);
  for (std::size_t t = 0; t < trials; ++t) {
    averages[t] = static_cast<double>(crossing_area(sample_chords(n, trial_seed(trial_base, n, t)))) / r.pair_count;
  }
  const double q = r.mean_estimate;
  r.estimated_center = chebyshev_check(averages, q, r.dependent_fraction, q * (1.0 - q), eps);
  r.exact_center = chebyshev_check(averages, 0.5, r.dependent_fraction, 0.25, eps);
  return r;
}

}  // namespace finsler::chords
