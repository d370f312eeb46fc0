#include <doctest.h>

#include <cmath>
#include <numbers>

#include "finsler/error.hpp"
#include "finsler/integral_geometry.hpp"
#include "finsler/line_measure.hpp"

using namespace finsler;
using namespace finsler::ig;
using doctest::Approx;

TEST_CASE("reversal") {
  const auto l = reversed({0.5, 0.25});
  CHECK(l.theta == Approx(0.5 + std::numbers::pi));
  CHECK(l.p == -0.25);
}

TEST_CASE("masses and truncation") {
  const LineMeasure uniform(Uniform{1.0});
  CHECK(total_mass(truncate(uniform, 1)) == Approx(4 * std::numbers::pi).epsilon(1e-14));
  CHECK(total_mass(truncate(make_mu_ext(), 6)) == Approx(18).epsilon(1e-14));
  CHECK(std::isinf(total_mass(make_mu_ext())));
  const auto [prob, mass] = normalize(truncate(uniform, 2));
  CHECK(mass == Approx(8 * std::numbers::pi));
  CHECK(total_mass(prob) == Approx(1));
  const auto [again, one] = normalize(prob);
  CHECK(one == Approx(1));
  CHECK(total_mass(again) == Approx(1));
  CHECK_THROWS_AS(normalize(scaled(truncate(uniform, 1), 0.0)), Error);
  CHECK(total_mass(uniform_with_mass(18, 6)) == Approx(18));
  CHECK_THROWS_AS(LineMeasure(Uniform{-1.0}), Error);
}

TEST_CASE("truncation clips distances") {
  const auto t = truncate(LineMeasure(Uniform{1.0}), 1.0);
  // Along the x-axis: d = int_0^{pi/2} min(1, 3 sin) - min(1, 2 sin) dtheta.
  const auto clipped = [](double a) {
    const double c = std::asin(1 / a);
    return a * (1 - std::cos(c)) + std::numbers::pi / 2 - c;
  };
  CHECK(mu_distance(t, {2, 0}, {3, 0}) == Approx(clipped(3) - clipped(2)).epsilon(1e-9));
  CHECK(mu_distance(t, {2, 0}, {3, 1}) < mu_distance(LineMeasure(Uniform{1.0}), {2, 0}, {3, 1}));
  const double inner = mu_distance(t, {-0.1, 0}, {0.1, 0});
  CHECK(inner == Approx(0.2).epsilon(1e-9));
}

TEST_CASE("bump kernel") {
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(-1.5) == 0.0);
  CHECK(bump(0.0) > 0.0);
  CHECK(bump_cdf(-1.0) == 0.0);
  CHECK(bump_cdf(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(bump_cdf(0.0) == Approx(0.5).epsilon(1e-14));
  CHECK(bump_cdf_integral(1.0) == Approx(1.0).epsilon(1e-12));
  CHECK(bump_cdf_integral(3.0) == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("convolution preserves mass and reversal symmetry") {
  const auto mu0 = truncate(make_mu_ext(), 6);
  for (double eps : {0.2, 0.1}) {
    const auto g = convolve(mu0, eps);
    CHECK(total_mass(g) == Approx(18).epsilon(1e-9));
    const auto& grid = std::get<GridDensity>(g.variant());
    for (double theta : {0.3, 1.7, 2.9}) {
      for (double p : {-3.2, -0.05, 1.1, 5.9}) {
        CHECK(grid.density(theta, p) == Approx(grid.density(theta + std::numbers::pi, -p)).epsilon(1e-12));
      }
    }
  }
  const auto s = smoothed_mu_ext(0.1, 6);
  CHECK(total_mass(s) == Approx(18).epsilon(1e-9));
  CHECK(mix(truncate(make_mu_ext(), 6), 0.5, uniform_with_mass(18, 6)).variant().index() == 4);
}

TEST_CASE("smoothed distance approaches the hexagon distance") {
  const auto ext = make_mu_ext();
  const double exact = mu_distance(ext, {0, 0}, {1, 0});
  double prev = 1e9;
  for (double eps : {0.2, 0.1, 0.05}) {
    const double err = std::abs(mu_distance(smoothed_mu_ext(eps, 6), {0, 0}, {1, 0}) - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.01);
}
