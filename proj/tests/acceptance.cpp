// Acceptance report: one PASS/FAIL line per criterion, details on the same
// line. Exit status is 0 when every criterion was evaluated, whatever its
// outcome; --strict makes any FAIL exit 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "finsler/arrangement.hpp"
#include "finsler/chords.hpp"
#include "finsler/disk.hpp"
#include "finsler/error.hpp"
#include "finsler/integral_geometry.hpp"
#include "finsler/optimizer.hpp"
#include "finsler/rng.hpp"
#include "finsler/strands.hpp"

namespace {

using namespace finsler;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome extremal_equality() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string first_bad;
  for (std::int64_t r = 1; r <= 20; ++r) {
    const auto f = disk::extremal_disk(r);
    const auto rep = disk::validate(f);
    const bool good = rep.valid && rep.radius == r && static_cast<std::int64_t>(f.size()) == 3 * r &&
                      disk::discrete_area(f).twice_value() == 3 * r * r;
    if (!good && ok) first_bad = fmt(" first failure r=%lld", static_cast<long long>(r));
    ok = ok && good;
  }
  const double t = seconds_since(t0);
  return {ok && t < 1.0, fmt("r=1..20 valid, n=3r, area=3r^2/2; %.3fs", t) + first_bad};
}

Outcome enumeration_oracle() {
  const auto t0 = Clock::now();
  opt::EnumerationOptions options;
  options.threads = 4;
  const auto e1 = opt::enumerate_disks(1, 5, options).summary;
  const auto e2 = opt::enumerate_disks(2, 7, options).summary;
  const bool ok1 = e1.min_area && e1.min_area->twice_value() == 3 && e1.minimizing_codes.size() == 1 &&
                   e1.minimizing_codes[0] == disk::canonical_code(disk::extremal_disk(1));
  const bool ok2 = e2.min_area && e2.min_area->twice_value() == 12 && e2.minimizing_codes.size() == 1 &&
                   e2.minimizing_codes[0] == disk::canonical_code(disk::extremal_disk(2));
  const double t = seconds_since(t0);
  return {ok1 && ok2 && t < 300.0,
          fmt("r=1 n<=5: %zu disks, min %s, %zu minimizer(s); r=2 n<=7: %zu disks, min %s, %zu minimizer(s); %.2fs",
              e1.count, e1.min_area ? e1.min_area->to_string().c_str() : "none", e1.minimizing_codes.size(),
              e2.count, e2.min_area ? e2.min_area->to_string().c_str() : "none", e2.minimizing_codes.size(), t)};
}

// Valid r = 2, 3 families that admit at least one move.
std::vector<disk::IntervalFamily> move_corpus() {
  std::vector<disk::IntervalFamily> corpus;
  opt::EnumerationOptions options;
  options.threads = 4;
  options.allow_large_radius = true;
  for (auto [r, n_max] : {std::pair<std::int64_t, std::int64_t>{2, 10}, {3, 10}}) {
    for (const auto& d : opt::enumerate_disks(r, n_max, options).disks) {
      if (opt::find_reduction(d.family)) corpus.push_back(d.family);
    }
  }
  return corpus;
}

std::vector<disk::IntervalFamily> g_config_free;

Outcome rewrite_moves() {
  const auto corpus = move_corpus();
  std::size_t moves = 0, adjacent_a = 0, crossing_a = 0, move_b = 0, bad_moves = 0, bad_outputs = 0;
  std::string first_bad;
  auto note = [&](const std::string& what) {
    if (first_bad.empty()) first_bad = "; first failure: " + what;
  };
  for (const auto& start : corpus) {
    const std::int64_t r = *disk::validate(start).radius;
    auto family = start;
    while (const auto config = opt::find_reduction(family)) {
      const auto before = disk::discrete_area(family).twice_value();
      const auto next = opt::apply_reduction(family, *config);
      const auto rep = disk::validate(next);
      const auto drop2 = before - disk::discrete_area(next).twice_value();
      ++moves;
      bool ok = rep.valid && rep.radius == r;
      if (config->kind == opt::MoveKind::B) {
        ++move_b;
        ok = ok && drop2 == 1;
      } else if (config->adjacent()) {
        ++adjacent_a;
        ok = ok && drop2 == 1;
      } else {
        ++crossing_a;
        ok = ok && drop2 >= 2;
      }
      if (!ok) {
        ++bad_moves;
        note(fmt("%s%s drop %lld/2", std::string(opt::to_string(config->kind)).c_str(),
                 config->adjacent() ? "(b=c)" : "", static_cast<long long>(drop2)));
      }
      family = next;
    }
    const auto out = opt::minimize(start).family;
    const auto n_out = static_cast<std::int64_t>(out.size());
    const bool out_ok = !opt::find_reduction(out) && disk::discrete_area(out).twice_value() == n_out * r &&
                        n_out >= 3 * r;
    if (!out_ok) {
      ++bad_outputs;
      note(fmt("output n=%lld area %s", static_cast<long long>(n_out), disk::discrete_area(out).to_string().c_str()));
    }
    g_config_free.push_back(out);
  }
  const bool ok = corpus.size() >= 100 && bad_moves == 0 && bad_outputs == 0;
  return {ok, fmt("%zu families, %zu moves (A crossing %zu, A b=c %zu, B %zu), %zu bad moves, %zu bad outputs",
                  corpus.size(), moves, crossing_a, adjacent_a, move_b, bad_moves, bad_outputs) +
                  first_bad};
}

Outcome strand_structure() {
  auto outputs = g_config_free;
  for (std::int64_t r = 1; r <= 6; ++r) outputs.push_back(disk::extremal_disk(r));
  std::set<std::vector<std::uint8_t>> distinct;
  std::size_t bad = 0, strips = 0;
  for (const auto& f : outputs) {
    distinct.insert(disk::canonical_code(f));
    const std::int64_t r = *disk::validate(f).radius;
    const auto d = strands::strand_decomposition(f);
    bool ok = static_cast<std::int64_t>(d.strands.size()) == r && strands::width_one_arc(d).has_value();
    for (const auto& s : d.strands) {
      for (std::size_t k = 0; k < s.widths2.size(); ++k) {
        ok = ok && s.widths2[k] + s.widths2[(k + 1) % s.widths2.size()] == 4 * r;
      }
    }
    for (disk::Coord2 t2 = 0; t2 < d.circumference2(); t2 += 2, ++strips) {
      const auto rep = strands::strip_report(f, d, t2);
      ok = ok && rep.crossings.twice_value() == 2 * r * r && rep.contained_disjoint &&
           std::all_of(rep.contained_arcs.begin(), rep.contained_arcs.end(), [](auto c) { return c == 1; });
    }
    if (!ok) ++bad;
  }
  return {!g_config_free.empty() && bad == 0,
          fmt("%zu config-free families (%zu distinct), %zu strips; %zu violations", outputs.size(), distinct.size(),
              strips, bad)};
}

Outcome crofton_euclid() {
  const auto t0 = Clock::now();
  const ig::LineMeasure uniform(ig::Uniform{1.0});
  const std::vector<ig::PlanePoint> segment{{0, 0}, {1, 0}};
  const double closed = ig::crofton_length(uniform, segment, ig::Closed{}).value;
  const auto mc = ig::crofton_length(uniform, segment, ig::MonteCarlo{1'000'000, rng::default_seed(11)});
  const double t = seconds_since(t0);
  const bool ok = std::abs(closed - 1.0) < 1e-12 && std::abs(mc.value - 1.0) < 0.01 && t < 30.0;
  return {ok, fmt("closed %.15f, MC %.5f +- %.5f; %.2fs", closed, mc.value, mc.std_error, t)};
}

Outcome santalo_euclid() {
  const ig::LineMeasure uniform(ig::Uniform{1.0});
  const auto disk = geom::regular_polygon(10000, 1.0);
  const double pi = std::numbers::pi;
  const double closed = ig::santalo_area(uniform, disk, ig::Closed{}).value;
  const double quad = ig::santalo_area(uniform, disk, ig::Quadrature{}).value;
  const auto mc = ig::santalo_area(uniform, disk, ig::MonteCarlo{1'000'000, rng::default_seed(12)});
  const bool ok = std::abs(closed / pi - 1) < 5e-4 && std::abs(quad / pi - 1) < 5e-4 && std::abs(mc.value / pi - 1) < 5e-3;
  return {ok, fmt("closed %.8f, quadrature %.8f, MC %.5f +- %.5f (pi = %.8f)", closed, quad, mc.value, mc.std_error, pi)};
}

Outcome hexagon_metric() {
  const auto ext = ig::make_mu_ext();
  const double d = ig::mu_distance(ext, {0, 0}, {1, 0});
  bool ok = std::abs(d - std::sqrt(3.0) / 8) < 1e-12;
  double worst_vertex = 0, worst_closed = 0, worst_mc = 0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto ball = ig::mu_ball(ext, r, 360);
    for (int k = 0; k < 6; ++k) {
      const auto z = ball[60 * k];
      const double target = 8 * std::sqrt(3.0) / 3 * r;
      const double angle = std::remainder(std::atan2(z.y, z.x) - k * std::numbers::pi / 3, 2 * std::numbers::pi);
      worst_vertex = std::max({worst_vertex, std::abs(std::hypot(z.x, z.y) - target), std::abs(angle)});
    }
    const double exact = 6 / std::numbers::pi * r * r;
    worst_closed = std::max(worst_closed, std::abs(ig::santalo_area(ext, ball, ig::Closed{}).value - exact));
    const auto mc = ig::santalo_area(ext, ball, ig::MonteCarlo{1'000'000, rng::default_seed(13)});
    worst_mc = std::max(worst_mc, std::abs(mc.value / exact - 1));
  }
  ok = ok && worst_vertex < 1e-6 && worst_closed < 1e-6 && worst_mc < 0.01;
  return {ok, fmt("d(O,(1,0)) - sqrt3/8 = %.1e; r in {0.5,1,2}: vertex error %.1e, closed area error %.1e, MC rel error %.4f",
                  d - std::sqrt(3.0) / 8, worst_vertex, worst_closed, worst_mc)};
}

Outcome smoothing_convergence() {
  const auto ext = ig::make_mu_ext();
  const auto ball = ig::mu_ball(ext, 1.0, 360);
  const geom::PointLocator inside(ball);
  const auto box = geom::bounding_disk(ball);
  std::vector<ig::PlanePoint> pts{{0, 0}};
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const ig::PlanePoint z{-box.radius + (i + 0.5) * box.radius / 5, -box.radius + (j + 0.5) * box.radius / 5};
      if (inside.contains(z)) pts.push_back(z);
    }
  }
  const double target = 6 / std::numbers::pi;
  std::vector<double> sups;
  std::string detail;
  double last_ratio = 0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto mu = ig::smoothed_mu_ext(eps, 6.0);
    double sup = 0, sup_center = 0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const double diff = std::abs(ig::mu_distance(mu, pts[a], pts[b]) - ig::mu_distance(ext, pts[a], pts[b]));
        sup = std::max(sup, diff);
        if (a == 0) sup_center = std::max(sup_center, diff);
      }
    }
    sups.push_back(sup);
    const auto eball = ig::mu_ball(mu, 1.0, 240);
    last_ratio = ig::santalo_area(mu, eball, ig::Quadrature{0, 2}).value / target;
    detail += fmt("eps %.2f: sup %.4f (from O %.4f), area/(6/pi) %.4f; ", eps, sup, sup_center, last_ratio);
  }
  const bool monotone = sups[0] > sups[1] && sups[1] > sups[2];
  const bool ok = monotone && sups[2] < 0.05 && std::abs(last_ratio - 1) < 0.05;
  return {ok, detail + fmt("%zu grid points", pts.size() - 1)};
}

Outcome discretization_convergence() {
  const auto t0 = Clock::now();
  const auto rep = chords::convergence_experiment({2000}, 50, {-0.5, 0}, {0.5, 0}, rng::default_seed(14), 0.05);
  const auto& s = rep.summaries.front();
  const double t = seconds_since(t0);
  const bool ok = std::abs(s.mean_dist - 1 / std::numbers::pi) < 0.01 && std::abs(s.mean_area - 0.5) < 0.01 &&
                  s.frac_dist_within >= 0.95 && s.frac_area_within >= 0.95 && t < 120.0;
  return {ok, fmt("mean d/n %.5f (1/pi %.5f), mean area term %.5f, within 0.05: %.2f / %.2f; %.2fs", s.mean_dist,
                  1 / std::numbers::pi, s.mean_area, s.frac_dist_within, s.frac_area_within, t)};
}

Outcome oracle_equivalence() {
  const auto seed = rng::default_seed(15);
  std::size_t mismatches = 0, queries = 0;
  for (std::uint64_t inst = 0; inst < 100; ++inst) {
    const auto chords = chords::sample_chords(200, rng::mix64(seed) ^ inst);
    const chords::Arrangement arr(chords);
    const rng::CounterRng g(seed, 1000 + inst);
    for (std::uint64_t q = 0; q < 100; ++q) {
      ig::PlanePoint z[2];
      for (int k = 0; k < 2; ++k) {
        const double rad = std::sqrt(g.open01(4 * q + 2 * k)) * 0.999;
        const double ang = g.uniform(4 * q + 2 * k + 1, 0, 2 * std::numbers::pi);
        z[k] = {rad * std::cos(ang), rad * std::sin(ang)};
      }
      ++queries;
      if (chords::separation_distance(chords, z[0], z[1]) != arr.cell_distance(z[0], z[1])) ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%zu instances, %zu queries, %zu mismatches", std::size_t{100}, queries, mismatches)};
}

Outcome wlln_bound() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {50, 100, 200}) {
    for (double eps : {0.05, 0.1}) {
      const auto w = chords::wlln_bound_check(n, eps, 2000, rng::default_seed(16) + n);
      ok = ok && w.estimated_center.within && w.exact_center.within;
      detail += fmt("n=%zu eps=%.2f: %.4f <= %.4f; ", n, eps, w.estimated_center.deviation_probability,
                    w.estimated_center.bound);
    }
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"extremal equality", extremal_equality},
      {"discrete lower bound oracle", enumeration_oracle},
      {"rewrite moves", rewrite_moves},
      {"strand structure", strand_structure},
      {"crofton euclid", crofton_euclid},
      {"santalo euclid", santalo_euclid},
      {"hexagon metric", hexagon_metric},
      {"smoothing convergence", smoothing_convergence},
      {"discretization convergence", discretization_convergence},
      {"oracle equivalence", oracle_equivalence},
      {"wlln bound", wlln_bound},
  };
  int failures = 0, errors = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
      ++errors;
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  if (errors) return 2;
  return strict && failures ? 1 : 0;
}
