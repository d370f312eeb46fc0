#include <doctest.h>

#include <random>

#include "finsler/disk.hpp"
#include "finsler/error.hpp"

using namespace finsler;
using namespace finsler::disk;

namespace {

// Unit tiling of a circle of circumference n: arcs (k - 1/2, k + 1/2).
IntervalFamily tiling(Coord2 n) {
  std::vector<Interval> v;
  for (Coord2 k = 0; k < n; ++k) v.push_back({2 * k - 1, 2 * k + 1});
  return IntervalFamily(2 * n, v);
}

CylinderPoint at(std::int64_t s2_num, std::int64_t s2_den, std::int64_t h2_num, std::int64_t h2_den) {
  return CylinderCoord{Rational(s2_num, s2_den), Rational(h2_num, h2_den)};
}

}  // namespace

TEST_CASE("family type invariants") {
  CHECK_THROWS_AS(IntervalFamily(4, {{0, 1}}), Error);   // even endpoint
  CHECK_THROWS_AS(IntervalFamily(4, {{1, 1}}), Error);   // empty arc
  CHECK_THROWS_AS(IntervalFamily(4, {{1, 3}, {1, 3}}), Error);
  CHECK_THROWS_AS(IntervalFamily(3, {{1, 3}}), Error);   // odd circumference2
  CHECK_THROWS_AS(IntervalFamily(6, {{5, 1}, {-1, 1}}), Error);  // equal after reduction
  const IntervalFamily f(6, {{5, 1}, {3, 5}, {1, 3}});
  CHECK(f == IntervalFamily(6, {{-1, 1}, {1, 3}, {3, 5}}));
  CHECK(f.size() == 3);
  CHECK(f[0].a2 == 1);
}

TEST_CASE("validate examples") {
  const auto r2 = validate(extremal_disk(2));
  CHECK(r2.valid);
  CHECK(r2.radius == 2);
  CHECK(extremal_disk(2).size() == 6);

  const auto pair = validate(IntervalFamily(4, {{-1, 1}, {1, 3}}));
  CHECK_FALSE(pair.valid);
  CHECK_FALSE(pair.radius.has_value());
  REQUIRE_FALSE(pair.violations.empty());
  CHECK(std::holds_alternative<CoverPair>(pair.violations.front()));

  const auto t3 = validate(tiling(3));
  CHECK(t3.valid);
  CHECK(t3.radius == 1);

  const auto empty = validate(IntervalFamily(6, {}));
  CHECK(empty.valid);
  CHECK(empty.radius == 0);
  CHECK(discrete_area(IntervalFamily(6, {})).twice_value() == 0);
}

TEST_CASE("validate reports coverage and degree violations") {
  const auto cov = validate(IntervalFamily(8, {{1, 3}, {3, 5}}));
  CHECK_FALSE(cov.valid);
  bool coverage = false, degree = false;
  for (const auto& v : cov.violations) {
    coverage |= std::holds_alternative<CoverageMismatch>(v);
    degree |= std::holds_alternative<EndpointDegree>(v);
  }
  CHECK(coverage);
  CHECK(degree);
  CHECK_THROWS_AS(require_valid(IntervalFamily(8, {{1, 3}})), Error);
}

TEST_CASE("discrete area examples") {
  CHECK(discrete_area(extremal_disk(5)).to_string() == "75/2");
  CHECK(discrete_area(tiling(3)).to_string() == "3/2");
  CHECK(discrete_area_raw(IntervalFamily(8, {{1, 3}, {5, 7}})).twice_value() == 0);
  CHECK_THROWS_AS(discrete_area(IntervalFamily(8, {{1, 3}, {5, 7}})), Error);
  CHECK(HalfInteger(6).to_string() == "3");
  CHECK(HalfInteger(-3).to_string() == "-3/2");
}

TEST_CASE("extremal disk construction") {
  const auto f1 = extremal_disk(1);
  CHECK(f1 == tiling(3));
  for (std::int64_t r = 1; r <= 12; ++r) {
    const auto f = extremal_disk(r);
    CHECK(f.circumference() == 3 * r);
    CHECK(require_valid(f) == r);
    CHECK(discrete_area(f).twice_value() == 3 * r * r);
  }
  CHECK_THROWS_AS(extremal_disk(0), Error);
}

TEST_CASE("discrete distance examples") {
  for (std::int64_t r = 1; r <= 5; ++r) {
    const auto f = extremal_disk(r);
    CHECK(discrete_distance(f, Center{}, at(2, 1, 0, 1)) == r);
    CHECK(discrete_distance(f, at(2, 1, 1, 3), at(2, 1, 1, 3)) == 0);
  }
  const IntervalFamily single(6, {{-1, 1}});
  CHECK(discrete_distance_raw(single, at(0, 1, 1, 5), Center{}) == 1);
  CHECK(tent_side(single, 0, at(0, 1, 1, 1)) == TentSide::OnBoundary);
  CHECK_THROWS_AS(discrete_distance(extremal_disk(1), at(0, 1, 1, 1), Center{}), Error);
}

TEST_CASE("discrete distance is a metric bounded by n") {
  std::mt19937_64 gen(5);
  for (std::int64_t r : {2, 3, 4}) {
    const auto f = extremal_disk(r);
    const auto n = f.circumference();
    std::uniform_int_distribution<std::int64_t> s(0, 2 * n * 7 - 1), h(0, 2 * r * 7);
    auto random_point = [&]() -> CylinderPoint {
      for (;;) {
        const CylinderPoint p = CylinderCoord{Rational(s(gen), 7), Rational(h(gen), 7)};
        bool generic = true;
        for (std::size_t i = 0; i < f.size(); ++i) generic &= tent_side(f, i, p) != TentSide::OnBoundary;
        if (generic) return p;
      }
    };
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_point(), q = random_point(), z = random_point();
      const auto pq = discrete_distance(f, p, q);
      CHECK(pq == discrete_distance(f, q, p));
      CHECK(pq <= discrete_distance(f, p, z) + discrete_distance(f, z, q));
      CHECK(pq <= n);
      std::int64_t depth = 0;
      for (std::size_t i = 0; i < f.size(); ++i) depth += tent_side(f, i, p) == TentSide::Inside;
      CHECK(discrete_distance(f, p, Center{}) == depth);
    }
  }
}

TEST_CASE("canonical codes") {
  const auto e1 = extremal_disk(1);
  CHECK(canonical_code(e1) == canonical_code(rotated(e1, 2)));
  const auto e3 = extremal_disk(3);
  CHECK(canonical_code(reflected(e3)) == canonical_code(e3));
  CHECK(canonical_code(rotated(reflected(e3), 4)) == canonical_code(e3));
  CHECK(canonical_code(extremal_disk(2)) != canonical_code(tiling(4)));
  CHECK(canonical_code(tiling(4)) != canonical_code(tiling(5)));
  CHECK(to_hex(std::vector<std::uint8_t>{0x0a, 0xff}) == "0aff");
}

TEST_CASE("compaction relabels onto the unit grid") {
  const IntervalFamily sparse(16, {{1, 5}, {5, 13}, {13, 1}});
  const auto c = compacted(sparse);
  CHECK(c == tiling(3));
  CHECK(discrete_area(c) == discrete_area(sparse));
}
