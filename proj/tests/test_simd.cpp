#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "finsler/chords.hpp"
#include "finsler/rng.hpp"
#include "finsler/simd/kernels.hpp"

using namespace finsler;
using namespace finsler::simd;

TEST_CASE("dispatch") {
  CHECK(isa_supported(Isa::Scalar));
  const Isa saved = active_isa();
  set_active_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  set_active_isa(saved);
  CHECK(to_string(Isa::Avx2) == "avx2");
}

TEST_CASE("avx2 kernels match scalar kernels") {
  if (!isa_supported(Isa::Avx2)) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  const auto& s = kernels_for(Isa::Scalar);
  const auto& v = kernels_for(Isa::Avx2);
  const rng::CounterRng g(21, 0);
  // Lengths around the vector width exercise every tail.
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 100, 1001}) {
    const auto chords = chords::sample_chords(n, 100 + n);
    const auto& p = chords.p();
    const auto& c = chords.cos();
    const auto& si = chords.sin();
    for (std::uint64_t q = 0; q < 20; ++q) {
      const double theta = g.uniform(6 * q, 0, 2 * std::numbers::pi);
      const double pi = g.uniform(6 * q + 1, -1, 1);
      CHECK(v.count_crossings_with(pi, std::cos(theta), std::sin(theta), p.data(), c.data(), si.data(), n) ==
            s.count_crossings_with(pi, std::cos(theta), std::sin(theta), p.data(), c.data(), si.data(), n));
      const double x1 = g.uniform(6 * q + 2, -0.7, 0.7), y1 = g.uniform(6 * q + 3, -0.7, 0.7);
      const double x2 = g.uniform(6 * q + 4, -0.7, 0.7), y2 = g.uniform(6 * q + 5, -0.7, 0.7);
      CHECK(v.count_separating(x1, y1, x2, y2, p.data(), c.data(), si.data(), n) ==
            s.count_separating(x1, y1, x2, y2, p.data(), c.data(), si.data(), n));
    }
    const double ds = s.dot(p.data(), c.data(), n), dv = v.dot(p.data(), c.data(), n);
    CHECK(std::abs(ds - dv) <= 1e-13 * (1 + static_cast<double>(n)));
  }
}

TEST_CASE("whole-pipeline results do not depend on the active isa") {
  const Isa saved = active_isa();
  std::vector<std::uint64_t> results;
  for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
    if (!isa_supported(isa)) continue;
    set_active_isa(isa);
    const auto chords = chords::sample_chords(700, 4);
    results.push_back(chords::crossing_area(chords));
    results.push_back(chords::separation_distance(chords, {-0.4, 0.1}, {0.5, -0.2}));
  }
  set_active_isa(saved);
  for (std::size_t i = 2; i < results.size(); ++i) CHECK(results[i] == results[i - 2]);
}
