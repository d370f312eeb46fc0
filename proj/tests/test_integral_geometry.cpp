#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "finsler/error.hpp"
#include "finsler/integral_geometry.hpp"

using namespace finsler;
using namespace finsler::ig;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("line offsets") {
  CHECK(line_offset({1, 0}, kPi / 2) == Approx(1));
  CHECK(line_offset({0, 0}, 1.234) == 0.0);
  CHECK(line_offset({0, 1}, 0) == Approx(-1));
}

TEST_CASE("distance examples") {
  const LineMeasure uniform(Uniform{1.0});
  CHECK(mu_distance(uniform, {0, 0}, {1, 0}) == Approx(1).epsilon(1e-14));
  CHECK(mu_distance(uniform, {0.3, -2}, {0.3, -2}) == 0.0);
  const auto ext = make_mu_ext();
  CHECK(std::abs(mu_distance(ext, {0, 0}, {1, 0}) - std::sqrt(3.0) / 8) < 1e-12);
  CHECK(mu_distance(ext, {0, 0}, {0.4, 0.4}) > 0.0);
  // Only the family at 2pi/3 is crossed along +x; a single family gives the projection.
  const LineMeasure one(ParallelFamily{2 * kPi / 3, 0, kInf, 1});
  CHECK(mu_distance(one, {0, 0}, {1, 0}) == Approx(std::sqrt(3.0) / 8));
  CHECK(mu_distance(one, {0, 0}, {-1, 0}) == 0.0);
}

TEST_CASE("hexagon distance is invariant under rotation by 2pi/3") {
  const auto ext = make_mu_ext();
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const PlanePoint x{u(gen), u(gen)}, y{u(gen), u(gen)};
    const double c = std::cos(2 * kPi / 3), s = std::sin(2 * kPi / 3);
    const PlanePoint rx{c * x.x - s * x.y, s * x.x + c * x.y}, ry{c * y.x - s * y.y, s * y.x + c * y.y};
    CHECK(mu_distance(ext, rx, ry) == Approx(mu_distance(ext, x, y)).epsilon(1e-12));
  }
}

TEST_CASE("projective metric properties") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-3, 3), t(0, 1);
  for (const auto& mu : {make_mu_ext(), smoothed_mu_ext(0.2, 6), LineMeasure(Uniform{0.7})}) {
    for (int k = 0; k < 40; ++k) {
      const PlanePoint x{u(gen), u(gen)}, z{u(gen), u(gen)}, w{u(gen), u(gen)};
      const double s = t(gen);
      const PlanePoint y{x.x + s * (z.x - x.x), x.y + s * (z.y - x.y)};
      CHECK(mu_distance(mu, x, z) == Approx(mu_distance(mu, x, y) + mu_distance(mu, y, z)).epsilon(1e-9));
      CHECK(mu_distance(mu, x, z) <= mu_distance(mu, x, w) + mu_distance(mu, w, z) + 1e-9);
      CHECK(mu_distance(mu, x, z) == Approx(mu_distance(mu, z, x)).epsilon(1e-12));
    }
  }
  const auto ext = make_mu_ext();
  CHECK(mu_distance(ext, {0, 0}, {2.5, 1}) == Approx(2.5 * mu_distance(ext, {0, 0}, {1, 0.4})));
}

TEST_CASE("metric balls") {
  const auto ext = make_mu_ext();
  for (double r : {0.25, 1.0, 3.0}) {
    const auto ball = mu_ball(ext, r, 360);
    REQUIRE(ball.size() == 360);
    for (int k = 0; k < 6; ++k) {
      const auto z = ball[60 * k];
      CHECK(std::hypot(z.x, z.y) == Approx(8 * std::sqrt(3.0) / 3 * r).epsilon(1e-9));
      const auto m = ball[60 * k + 30];
      CHECK(std::hypot(m.x, m.y) == Approx(4 * r).epsilon(1e-9));
    }
  }
  const auto circle = mu_ball(LineMeasure(Uniform{1.0}), 0.5, 90);
  for (const auto& z : circle) CHECK(std::hypot(z.x, z.y) == Approx(0.5).epsilon(1e-8));
  CHECK_THROWS_AS(mu_ball(LineMeasure(ParallelFamily{0, 0, kInf, 1}), 1.0, 12), Error);
}

TEST_CASE("area examples") {
  const LineMeasure uniform(Uniform{1.0});
  const auto disk = geom::regular_polygon(2000, 1.0);
  const double poly = geom::area(disk);
  CHECK(santalo_area(uniform, disk, Closed{}).value == Approx(poly).epsilon(1e-12));
  const auto mc = santalo_area(uniform, disk, MonteCarlo{200'000, 3});
  CHECK(std::abs(mc.value - poly) < 3 * mc.std_error + 1e-9);

  const auto ext = make_mu_ext();
  for (double r : {0.5, 2.0}) {
    const auto hex = mu_ball(ext, r, 360);
    CHECK(santalo_area(ext, hex, Closed{}).value == Approx(6 / kPi * r * r).epsilon(1e-10));
    const auto hm = santalo_area(ext, hex, MonteCarlo{200'000, 5});
    CHECK(std::abs(hm.value - 6 / kPi * r * r) < 3 * hm.std_error);
  }
  CHECK(santalo_area(ext, {}, Closed{}).value == 0.0);
  CHECK(santalo_area(uniform, {}, MonteCarlo{}).value == 0.0);
  CHECK_THROWS_AS(santalo_area(smoothed_mu_ext(0.2, 6), disk, Closed{}), Error);
}

TEST_CASE("quadrature and Monte Carlo agree on a smoothed measure") {
  const auto mu = smoothed_mu_ext(0.2, 6);
  const auto square = geom::Polygon{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  const double q = santalo_area(mu, square, Quadrature{0, 2}).value;
  const auto mc = santalo_area(mu, square, MonteCarlo{400'000, 8});
  CHECK(std::abs(q - mc.value) < 4 * mc.std_error);
}

TEST_CASE("crofton lengths") {
  const LineMeasure uniform(Uniform{1.0});
  const std::vector<PlanePoint> segment{{0, 0}, {1, 0}};
  CHECK(crofton_length(uniform, segment, Closed{}).value == Approx(1).epsilon(1e-14));
  auto circle = geom::regular_polygon(1000, 1.0);
  circle.push_back(circle.front());
  const double perimeter = 2000 * std::sin(kPi / 1000);
  CHECK(crofton_length(uniform, circle, Closed{}).value == Approx(perimeter).epsilon(1e-12));
  const auto mc = crofton_length(uniform, circle, MonteCarlo{200'000, 2});
  CHECK(std::abs(mc.value - 2 * kPi) < 3 * mc.std_error + 1e-3);
  CHECK(crofton_length(uniform, {}, Closed{}).value == 0.0);
  CHECK(crofton_length(uniform, {{1, 1}}, MonteCarlo{}).value == 0.0);
}
