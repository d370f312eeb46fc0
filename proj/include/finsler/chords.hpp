#pragma once

// Random chords of the Euclidean unit disk: sampling, separation counts,
// interior crossing counts, the convergence experiment, and the
// weak-law deviation check for crossing indicators.

#include <cstdint>
#include <vector>

#include "finsler/line_measure.hpp"
#include "finsler/polygon.hpp"

namespace finsler::chords {

using geom::PlanePoint;
using ig::LineCoord;

// Structure of arrays so the counting kernels can stream over it.
class ChordSet {
 public:
  ChordSet() = default;
  // Throws Error{InvalidArgument} unless every |p| < 1 and chords are distinct.
  explicit ChordSet(const std::vector<LineCoord>& chords, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return theta_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  LineCoord operator[](std::size_t i) const noexcept { return {theta_[i], p_[i]}; }
  const std::vector<double>& theta() const noexcept { return theta_; }
  const std::vector<double>& p() const noexcept { return p_; }
  const std::vector<double>& cos() const noexcept { return cos_; }
  const std::vector<double>& sin() const noexcept { return sin_; }

 private:
  friend ChordSet sample_chords(std::size_t n, std::uint64_t seed);
  std::vector<double> theta_, p_, cos_, sin_;
  std::uint64_t seed_ = 0;
};

// theta uniform on [0, 2pi), p uniform on (-1, 1); draw k depends only on (seed, k).
ChordSet sample_chords(std::size_t n, std::uint64_t seed);

// Number of chords strictly separating x from y. Throws Error{NonGenericPoint}
// if a point lies on a chord, Error{InvalidArgument} if outside the open disk.
std::uint64_t separation_distance(const ChordSet& chords, PlanePoint x, PlanePoint y);

// Unordered chord pairs crossing strictly inside the unit disk.
std::uint64_t crossing_area(const ChordSet& chords);

// Whether chords i and j cross strictly inside the unit disk.
bool chords_cross(LineCoord a, LineCoord b) noexcept;

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  double dist_term = 0.0;  // separation_distance / n
  double area_term = 0.0;  // 2 crossing_area / (n^2 - n), 0 when n < 2
};

struct ConvergenceSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_dist = 0.0, mean_area = 0.0;
  double target_dist = 0.0, target_area = 0.0;
  double err_dist = 0.0, err_area = 0.0;
  // Fraction of trials within the given tolerance of the targets.
  double frac_dist_within = 0.0, frac_area_within = 0.0;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  PlanePoint x, y;
  double tolerance = 0.05;
  std::vector<TrialRecord> trials;
  std::vector<ConvergenceSummary> summaries;
};

// Seed of trial `trial` at size n.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) noexcept;

ExperimentReport convergence_experiment(const std::vector<std::size_t>& n_list, std::size_t trials, PlanePoint x,
                                        PlanePoint y, std::uint64_t seed, double tolerance = 0.05);

struct DeviationCheck {
  double deviation_probability = 0.0;  // fraction of trials with |avg - center| >= eps
  double bound = 0.0;                  // p E(X^2) / eps^2
  double std_error = 0.0;              // binomial standard error of the fraction
  bool within = false;                 // fraction <= bound + 3 std_error
};

// Chebyshev-type check for averages of a family in which a fraction p of
// variable pairs may be dependent.
DeviationCheck chebyshev_check(const std::vector<double>& averages, double center, double p, double second_moment,
                               double eps);

struct WllnReport {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double pair_count = 0.0;
  double dependent_fraction = 0.0;  // (2n - 3) / N
  double mean_estimate = 0.0;       // from an independent run
  double mean_estimate_error = 0.0;
  DeviationCheck estimated_center;  // centered at mean_estimate
  DeviationCheck exact_center;      // centered at 1/2
};

WllnReport wlln_bound_check(std::size_t n, double eps, std::size_t trials, std::uint64_t seed,
                            std::uint64_t estimate_pairs = 1'000'000);

}  // namespace finsler::chords
