#pragma once

// Measures on the space of oriented lines of the plane. A line with direction
// theta and signed offset p is {z : z.x sin(theta) - z.y cos(theta) = p};
// reversal maps (theta, p) to (theta + pi, -p).
//
// LineMeasure is an immutable value with cheap copies.

#include <cstddef>
#include <limits>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "finsler/error.hpp"

namespace finsler::ig {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineCoord {
  double theta = 0.0;
  double p = 0.0;
};

LineCoord reversed(LineCoord line) noexcept;

// density * dtheta dp.
struct Uniform {
  double density = 1.0;
};

// Lines orthogonal to the ray from O with unit vector (sin theta, -cos theta),
// at offsets t in [t_min, t_max] (t_min >= 0), with weight * dt. The weight is
// split evenly over both orientations.
struct ParallelFamily {
  double theta = 0.0;
  double t_min = 0.0;
  double t_max = kInf;
  double weight = 1.0;
};

// Piecewise-constant density on a theta-p grid: n_theta equal cells covering
// [0, 2pi) times n_p cells of width dp starting at p_min.
class GridDensity {
 public:
  GridDensity(std::size_t n_theta, std::size_t n_p, double p_min, double dp, std::vector<double> values);

  std::size_t n_theta() const noexcept { return n_theta_; }
  std::size_t n_p() const noexcept { return n_p_; }
  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_min_ + dp_ * static_cast<double>(n_p_); }
  double dp() const noexcept { return dp_; }
  double dtheta() const noexcept;
  double value(std::size_t i, std::size_t j) const noexcept { return values_[i * n_p_ + j]; }
  const std::vector<double>& values() const noexcept { return values_; }

  double density(double theta, double p) const noexcept;
  // Integral of row i's density over p in [lo, hi] (lo <= hi), per unit theta.
  double row_integral(std::size_t i, double lo, double hi) const noexcept;
  double mass() const noexcept;

 private:
  double cumulative(std::size_t i, double p) const noexcept;

  std::size_t n_theta_ = 0, n_p_ = 0;
  double p_min_ = 0.0, dp_ = 1.0;
  std::vector<double> values_;
  std::vector<double> cumsum_;  // per row, n_p + 1 entries
};

class LineMeasure;

// Restriction to lines with |p| <= p_max.
struct Truncated {
  std::shared_ptr<const LineMeasure> inner;
  double p_max = kInf;
};

struct Mixture {
  std::vector<std::pair<double, LineMeasure>> parts;
};

class LineMeasure {
 public:
  using Variant = std::variant<Uniform, ParallelFamily, GridDensity, Truncated, Mixture>;

  // Validates parameters; throws Error{InvalidArgument}.
  LineMeasure(Variant v);  // NOLINT(google-explicit-constructor)

  const Variant& variant() const noexcept { return *v_; }

 private:
  std::shared_ptr<const Variant> v_;
};

// Flattened view: every measure is a nonnegative combination of these atoms,
// each restricted to |p| <= p_max.
struct Atom {
  enum class Kind { Uniform, Parallel, Grid };
  Kind kind = Kind::Uniform;
  double scale = 1.0;
  double p_max = kInf;
  double density = 0.0;        // Uniform
  ParallelFamily family;       // Parallel, support already clipped to p_max
  const GridDensity* grid = nullptr;

  double mass() const noexcept;
  // Density with respect to dtheta dp (zero for Parallel).
  double density_at(double theta, double p) const noexcept;
};

// Atoms borrow grid storage from `mu`, which must outlive them.
std::vector<Atom> flatten(const LineMeasure& mu);

double total_mass(const LineMeasure& mu);
LineMeasure truncate(const LineMeasure& mu, double p_max);
LineMeasure scaled(const LineMeasure& mu, double factor);
// Probability measure and the original mass. Throws Error{ZeroMass}, or
// Error{InvalidArgument} for infinite mass.
std::pair<LineMeasure, double> normalize(const LineMeasure& mu);

// The three families at directions 2k pi / 3 with offsets t >= 0 and unit weight.
LineMeasure make_mu_ext();

// Uniform measure restricted to |p| <= p_max and rescaled to the given mass.
LineMeasure uniform_with_mass(double mass, double p_max);

// (1 - eps) mu_eps + eps lambda0.
LineMeasure mix(const LineMeasure& mu_eps, double eps, const LineMeasure& lambda0);

struct ConvolutionOptions {
  // Cells per kernel half-width eps in each coordinate.
  int cells_per_eps = 4;
  double mass_tolerance = 1e-9;
};

// Density of h_eps * mu0 on a grid, where h_eps is the normalized product of
// the bumps exp(-1 / (1 - (t/eps)^2)) in theta and p. Cell masses are exact
// up to the tabulated kernel integrals. mu0 must be a finite combination of
// Uniform and ParallelFamily atoms. Throws Error{GridTooCoarse} if the grid
// mass differs from mu0's mass beyond tolerance.
LineMeasure convolve(const LineMeasure& mu0, double eps, const ConvolutionOptions& options = {});

// (1 - eps) h_eps * truncate(mu_ext, t) + eps lambda0, where lambda0 is the
// uniform measure on |p| <= t rescaled to the same mass 3t.
LineMeasure smoothed_mu_ext(double eps, double t, int cells_per_eps = 4);

// Kernel helpers (unit half-width): h(u), Phi(u) = int_{-1}^{u} h, and
// Psi(u) = int_{-1}^{u} Phi, extended by 0 below -1 and linearly above 1.
double bump(double u) noexcept;
double bump_cdf(double u) noexcept;
double bump_cdf_integral(double u) noexcept;

}  // namespace finsler::ig
