#include <doctest.h>

#include "finsler/disk.hpp"
#include "finsler/error.hpp"
#include "finsler/optimizer.hpp"

using namespace finsler;
using namespace finsler::opt;

namespace {

IntervalFamily tiling(disk::Coord2 n) {
  std::vector<Interval> v;
  for (disk::Coord2 k = 0; k < n; ++k) v.push_back({2 * k - 1, 2 * k + 1});
  return IntervalFamily(2 * n, v);
}

// extremal_disk(2) with the nest at 0 replaced by two crossing arcs.
IntervalFamily perturbed_extremal2() {
  return IntervalFamily(12, {{-3, 1}, {-1, 3}, {3, 5}, {1, 7}, {7, 9}, {5, 11}});
}

}  // namespace

TEST_CASE("find_reduction examples") {
  for (std::int64_t r = 1; r <= 6; ++r) CHECK_FALSE(find_reduction(disk::extremal_disk(r)).has_value());
  for (disk::Coord2 n = 3; n <= 8; ++n) CHECK_FALSE(find_reduction(tiling(n)).has_value());

  const auto f = perturbed_extremal2();
  REQUIRE(disk::validate(f).valid);
  CHECK(disk::discrete_area(f).twice_value() == 14);
  const auto config = find_reduction(f);
  REQUIRE(config.has_value());
  CHECK(config->kind == MoveKind::B);
  CHECK(config->gamma == Interval{11, 3});
  CHECK(config->alpha == Interval{9, 1});
  CHECK(config->beta == Interval{1, 7});
}

TEST_CASE("MoveB on the perturbed extremal disk") {
  const auto f = perturbed_extremal2();
  const auto g = apply_reduction(f, *find_reduction(f));
  CHECK(disk::validate(g).radius == 2);
  CHECK(g.size() == 7);
  CHECK(g.circumference() == 7);
  CHECK(disk::discrete_area(g).to_string() == "13/2");
}

TEST_CASE("stale configurations are rejected") {
  const auto f = perturbed_extremal2();
  auto config = *find_reduction(f);
  CHECK_THROWS_AS(apply_reduction(disk::extremal_disk(2), config), Error);
  config.gamma = Interval{3, 5};
  CHECK_THROWS_AS(apply_reduction(f, config), Error);
}

TEST_CASE("MoveA decreases area by 1/2 when adjacent and by at least 1 when crossing") {
  bool saw_adjacent = false, saw_crossing = false;
  EnumerationOptions options;
  options.allow_large_radius = true;
  auto corpus = enumerate_disks(2, 9).disks;
  for (auto& d : enumerate_disks(3, 9, options).disks) corpus.push_back(std::move(d));
  for (const auto& d : corpus) {
    auto f = d.family;
    const auto r = disk::validate(f).radius;
    while (const auto config = find_reduction(f)) {
      const auto g = apply_reduction(f, *config);
      const auto drop2 = disk::discrete_area(f).twice_value() - disk::discrete_area(g).twice_value();
      CHECK(disk::validate(g).radius == r);
      if (config->kind == MoveKind::B) {
        CHECK(drop2 == 1);
        CHECK(g.size() == f.size() + 1);
      } else if (config->adjacent()) {
        saw_adjacent = true;
        CHECK(drop2 == 1);
        CHECK(g.size() + 1 == f.size());
      } else {
        saw_crossing = true;
        CHECK(drop2 >= 2);
        CHECK(g.size() == f.size());
      }
      f = g;
    }
  }
  CHECK(saw_adjacent);
  CHECK(saw_crossing);
}

TEST_CASE("minimize") {
  const auto e = disk::extremal_disk(3);
  const auto same = minimize(e);
  CHECK(same.family == e);
  CHECK(same.log.empty());

  const auto t5 = minimize(tiling(5));
  CHECK(t5.log.empty());
  CHECK(disk::discrete_area(t5.family).to_string() == "5/2");

  const auto p = minimize(perturbed_extremal2());
  const auto n_out = static_cast<std::int64_t>(p.family.size());
  CHECK_FALSE(find_reduction(p.family).has_value());
  CHECK(disk::discrete_area(p.family).twice_value() == 2 * n_out);
  CHECK(n_out >= 6);
  CHECK(p.log.size() <= 14u);
  for (const auto& m : p.log) CHECK(m.area_after < m.area_before);
}

TEST_CASE("enumeration examples") {
  const auto r1 = enumerate_disks(1, 5);
  CHECK(r1.summary.min_area->to_string() == "3/2");
  REQUIRE(r1.summary.minimizing_codes.size() == 1);
  CHECK(r1.summary.minimizing_codes[0] == disk::canonical_code(disk::extremal_disk(1)));

  const auto r2 = enumerate_disks(2, 7);
  CHECK(r2.summary.min_area->to_string() == "6");
  REQUIRE(r2.summary.minimizing_codes.size() == 1);
  CHECK(r2.summary.minimizing_codes[0] == disk::canonical_code(disk::extremal_disk(2)));
  for (const auto& d : r2.disks) {
    CHECK(d.area.twice_value() >= 12);
    if (d.area.twice_value() == 12) CHECK(d.n == 6);
  }

  CHECK(enumerate_disks(1, 2).disks.empty());
  CHECK_THROWS_AS(enumerate_disks(3, 9), Error);
}

TEST_CASE("enumeration is independent of thread count") {
  EnumerationOptions one, four;
  four.threads = 4;
  const auto a = enumerate_disks(2, 9, one), b = enumerate_disks(2, 9, four);
  REQUIRE(a.disks.size() == b.disks.size());
  for (std::size_t i = 0; i < a.disks.size(); ++i) {
    CHECK(a.disks[i].code == b.disks[i].code);
    CHECK(a.disks[i].family == b.disks[i].family);
  }
}
