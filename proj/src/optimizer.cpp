#include "finsler/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace finsler::opt {

using disk::Coord2;
using disk::mod;

namespace {

Coord2 len2(const Interval& iv, Coord2 n2) { return mod(iv.b2 - iv.a2, n2); }
Coord2 off2(Coord2 x, Coord2 from, Coord2 n2) { return mod(x - from, n2); }

bool covers(const Interval& outer, const Interval& inner, Coord2 n2) {
  return off2(inner.a2, outer.a2, n2) + len2(inner, n2) <= len2(outer, n2);
}

bool strictly_in(const Interval& arc, Coord2 x, Coord2 n2) {
  const Coord2 o = off2(x, arc.a2, n2);
  return o > 0 && o < len2(arc, n2);
}

// Orders two arcs covered by gamma as alpha = [a, c], beta = [b, d] with
// a <= b <= c <= d inside gamma, if they cross or are adjacent.
std::optional<std::pair<Interval, Interval>> intersecting_pair(const Interval& gamma, const Interval& x,
                                                               const Interval& y, Coord2 n2) {
  if (x.b2 == y.a2) return std::pair{x, y};
  if (y.b2 == x.a2) return std::pair{y, x};
  const Coord2 xa = off2(x.a2, gamma.a2, n2), xb = off2(x.b2, gamma.a2, n2);
  const Coord2 ya = off2(y.a2, gamma.a2, n2), yb = off2(y.b2, gamma.a2, n2);
  if (xa < ya && ya < xb && xb < yb) return std::pair{x, y};
  if (ya < xa && xa < yb && yb < xb) return std::pair{y, x};
  return std::nullopt;
}

bool contains_interval(const IntervalFamily& f, const Interval& iv) {
  return std::binary_search(f.intervals().begin(), f.intervals().end(), iv);
}

std::optional<ReductionConfig> find_move_a(const IntervalFamily& f) {
  const Coord2 n2 = f.circumference2();
  const std::size_t m = f.size();
  std::vector<std::size_t> covered;
  for (std::size_t g = 0; g < m; ++g) {
    covered.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (i != g && covers(f[g], f[i], n2)) covered.push_back(i);
    }
    for (std::size_t x = 0; x < covered.size(); ++x) {
      for (std::size_t y = x + 1; y < covered.size(); ++y) {
        if (auto p = intersecting_pair(f[g], f[covered[x]], f[covered[y]], n2)) {
          return ReductionConfig{MoveKind::A, f[g], p->first, p->second};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_move_b_candidate(const Interval& gamma, const Interval& alpha, const Interval& beta, Coord2 n2) {
  return strictly_in(alpha, gamma.a2, n2) && strictly_in(beta, gamma.b2, n2);
}

std::optional<ReductionConfig> find_move_b(const IntervalFamily& f) {
  const Coord2 n2 = f.circumference2();
  const std::size_t m = f.size();
  // Adjacent pairs by common point c, ascending.
  std::vector<std::pair<std::size_t, std::size_t>> adjacent;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && f[i].b2 == f[j].a2) adjacent.emplace_back(i, j);
    }
  }
  std::sort(adjacent.begin(), adjacent.end(),
            [&](const auto& u, const auto& v) { return f[u.second].a2 < f[v.second].a2; });

  for (const auto& [ai, bi] : adjacent) {
    const Interval& alpha = f[ai];
    const Interval& beta = f[bi];
    std::optional<std::size_t> best;
    for (std::size_t g = 0; g < m; ++g) {
      if (g == ai || g == bi || !is_move_b_candidate(f[g], alpha, beta, n2)) continue;
      // Minimal w.r.t. covering: gamma may not cover another candidate.
      bool minimal = true;
      for (std::size_t h = 0; h < m && minimal; ++h) {
        if (h != g && h != ai && h != bi && is_move_b_candidate(f[h], alpha, beta, n2) &&
            covers(f[g], f[h], n2)) {
          minimal = false;
        }
      }
      if (!minimal) continue;
      if (!best || len2(f[g], n2) < len2(f[*best], n2) ||
          (len2(f[g], n2) == len2(f[*best], n2) && f[g].a2 < f[*best].a2)) {
        best = g;
      }
    }
    if (best) return ReductionConfig{MoveKind::B, f[*best], alpha, beta};
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(MoveKind kind) noexcept { return kind == MoveKind::A ? "A" : "B"; }

std::optional<ReductionConfig> find_reduction(const IntervalFamily& family) {
  disk::require_valid(family);
  if (auto a = find_move_a(family)) return a;
  return find_move_b(family);
}

IntervalFamily apply_reduction(const IntervalFamily& family, const ReductionConfig& config) {
  const Coord2 n2 = family.circumference2();
  const Interval& g = config.gamma;
  const Interval& alpha = config.alpha;
  const Interval& beta = config.beta;
  if (!contains_interval(family, g) || !contains_interval(family, alpha) || !contains_interval(family, beta) ||
      g == alpha || g == beta || alpha == beta) {
    fail(ErrorKind::StaleConfig, "configuration intervals are not all present in the family");
  }

  std::vector<Interval> rest;
  rest.reserve(family.size() + 1);

  if (config.kind == MoveKind::A) {
    if (!covers(g, alpha, n2) || !covers(g, beta, n2)) {
      fail(ErrorKind::StaleConfig, "MoveA: gamma does not cover both arcs");
    }
    auto ordered = intersecting_pair(g, alpha, beta, n2);
    if (!ordered || !(ordered->first == alpha)) {
      fail(ErrorKind::StaleConfig, "MoveA: arcs are not intersecting in the recorded order");
    }
    for (const auto& iv : family.intervals()) {
      if (!(iv == alpha) && !(iv == beta)) rest.push_back(iv);
    }
    rest.push_back({alpha.a2, beta.b2});
    if (alpha.b2 != beta.a2) rest.push_back({beta.a2, alpha.b2});
    return IntervalFamily(n2, std::move(rest));
  }

  if (alpha.b2 != beta.a2 || !is_move_b_candidate(g, alpha, beta, n2)) {
    fail(ErrorKind::StaleConfig, "MoveB: gamma does not cross the adjacent pair");
  }
  const Coord2 c = alpha.b2;
  auto regrid = [c](Coord2 x) { return x > c ? x + 2 : x; };
  for (const auto& iv : family.intervals()) {
    if (iv == alpha || iv == beta || iv == g) continue;
    rest.push_back({regrid(iv.a2), regrid(iv.b2)});
  }
  const Coord2 c_minus = c;
  const Coord2 c_plus = c + 2;
  rest.push_back({regrid(alpha.a2), c_plus});
  rest.push_back({c_minus, regrid(beta.b2)});
  rest.push_back({regrid(g.a2), c_minus});
  rest.push_back({c_plus, regrid(g.b2)});
  return IntervalFamily(n2 + 2, std::move(rest));
}

MinimizeResult minimize(const IntervalFamily& family) {
  const auto radius = disk::require_valid(family);
  MinimizeResult result{family, {}};
  HalfInteger area = disk::discrete_area_raw(family);
  while (auto config = find_reduction(result.family)) {
    IntervalFamily next = apply_reduction(result.family, *config);
    const auto report = disk::validate(next);
    if (!report.valid || *report.radius != radius) {
      fail(ErrorKind::InternalInvariant, "rewrite move broke validity or changed the radius");
    }
    const HalfInteger next_area = disk::discrete_area_raw(next);
    if (next_area >= area) fail(ErrorKind::InternalInvariant, "rewrite move did not decrease the area");
    result.log.push_back({*config, area, next_area, next.size()});
    result.family = std::move(next);
    area = next_area;
  }
  return result;
}

namespace {

struct SearchState {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::vector<std::int64_t> width;  // by slot
  std::vector<bool> end_used;
  std::int64_t sum = 0;
  std::int64_t wraps = 0;
};

// Representative choice independent of search order and thread schedule.
bool precedes(const IntervalFamily& a, const IntervalFamily& b) {
  return std::ranges::lexicographical_compare(a.intervals(), b.intervals());
}

class Enumerator {
 public:
  Enumerator(std::int64_t r, std::uint64_t max_nodes, std::atomic<std::uint64_t>& nodes)
      : r_(r), max_nodes_(max_nodes), nodes_(nodes) {}

  std::map<std::vector<std::uint8_t>, EnumeratedDisk>& found() { return found_; }

  void run(std::int64_t n, std::int64_t first_width) {
    SearchState s;
    s.n = n;
    s.r = r_;
    s.width.assign(static_cast<std::size_t>(n), 0);
    s.end_used.assign(static_cast<std::size_t>(n), false);
    if (place(s, 0, first_width)) descend(s, 1);
  }

 private:
  // Whether slot `slot` can take width w; updates state when it can.
  bool place(SearchState& s, std::int64_t slot, std::int64_t w) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= max_nodes_) {
      fail(ErrorKind::ComplexityRefusal, "enumeration exceeded its node budget");
    }
    const std::int64_t n = s.n;
    const std::int64_t end = (slot + w) % n;
    if (s.end_used[static_cast<std::size_t>(end)]) return false;
    const std::int64_t wraps = s.wraps + (slot + w >= n ? 1 : 0);
    if (wraps > r_) return false;
    const std::int64_t remaining = n - slot - 1;
    const std::int64_t sum = s.sum + w;
    if (sum + remaining > r_ * n || sum + remaining * (n - 1) < r_ * n) return false;
    // No pair of closed arcs may cover the circle.
    const Coord2 n2 = 2 * n;
    const Interval mine{2 * slot + 1, 2 * ((slot + w) % n) + 1};
    for (std::int64_t t = 0; t < slot; ++t) {
      const Interval other{2 * t + 1, 2 * ((t + s.width[static_cast<std::size_t>(t)]) % n) + 1};
      const Coord2 comp = n2 - len2(mine, n2);
      if (off2(mine.b2, other.a2, n2) + comp <= len2(other, n2)) return false;
    }
    s.width[static_cast<std::size_t>(slot)] = w;
    s.end_used[static_cast<std::size_t>(end)] = true;
    s.sum = sum;
    s.wraps = wraps;
    return true;
  }

  void unplace(SearchState& s, std::int64_t slot) {
    const std::int64_t w = s.width[static_cast<std::size_t>(slot)];
    s.end_used[static_cast<std::size_t>((slot + w) % s.n)] = false;
    s.sum -= w;
    s.wraps -= (slot + w >= s.n ? 1 : 0);
    s.width[static_cast<std::size_t>(slot)] = 0;
  }

  void descend(SearchState& s, std::int64_t slot) {
    if (slot == s.n) {
      if (s.wraps == r_ && s.sum == r_ * s.n) record(s);
      return;
    }
    for (std::int64_t w = 1; w < s.n; ++w) {
      if (!place(s, slot, w)) continue;
      descend(s, slot + 1);
      unplace(s, slot);
    }
  }

  void record(const SearchState& s) {
    std::vector<Interval> intervals;
    intervals.reserve(static_cast<std::size_t>(s.n));
    for (std::int64_t t = 0; t < s.n; ++t) {
      intervals.push_back({2 * t + 1, 2 * ((t + s.width[static_cast<std::size_t>(t)]) % s.n) + 1});
    }
    IntervalFamily family(2 * s.n, std::move(intervals));
    auto code = disk::canonical_code(family);
    if (auto it = found_.find(code); it != found_.end()) {
      if (precedes(family, it->second.family)) it->second.family = std::move(family);
      return;
    }
    const auto report = disk::validate(family);
    if (!report.valid || *report.radius != r_) {
      fail(ErrorKind::InternalInvariant, "enumerator produced an invalid family");
    }
    EnumeratedDisk d{code, s.n, disk::discrete_area_raw(family), std::move(family)};
    found_.emplace(std::move(code), std::move(d));
  }

  std::int64_t r_;
  std::uint64_t max_nodes_;
  std::atomic<std::uint64_t>& nodes_;
  std::map<std::vector<std::uint8_t>, EnumeratedDisk> found_;
};

}  // namespace

EnumerationResult enumerate_disks(std::int64_t r, std::int64_t n_max, const EnumerationOptions& options) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "enumeration requires r >= 1");
  if (r > 2 && !options.allow_large_radius) {
    fail(ErrorKind::ComplexityRefusal, "exhaustive enumeration is limited to r <= 2 without opt-in");
  }

  struct Task {
    std::int64_t n;
    std::int64_t first_width;
  };
  std::vector<Task> tasks;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    for (std::int64_t w = 1; w < n; ++w) tasks.push_back({n, w});
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, options.threads);
  std::vector<std::map<std::vector<std::uint8_t>, EnumeratedDisk>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned id) {
    try {
      Enumerator e(r, options.max_nodes, nodes);
      for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
        e.run(tasks[t].n, tasks[t].first_width);
      }
      partial[id] = std::move(e.found());
    } catch (...) {
      errors[id] = std::current_exception();
      next.store(tasks.size());
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::map<std::vector<std::uint8_t>, EnumeratedDisk> merged;
  for (auto& p : partial) {
    for (auto& [code, d] : p) {
      auto [it, fresh] = merged.try_emplace(code, d);
      if (!fresh && precedes(d.family, it->second.family)) it->second.family = std::move(d.family);
    }
  }

  EnumerationResult result;
  for (auto& [code, d] : merged) result.disks.push_back(std::move(d));
  std::stable_sort(result.disks.begin(), result.disks.end(), [](const EnumeratedDisk& a, const EnumeratedDisk& b) {
    return a.n != b.n ? a.n < b.n : a.code < b.code;
  });

  auto& s = result.summary;
  s.r = r;
  s.n_max = n_max;
  s.count = result.disks.size();
  s.nodes = nodes.load();
  for (const auto& d : result.disks) {
    if (!s.min_area || d.area < *s.min_area) {
      s.min_area = d.area;
      s.minimizing_codes.clear();
    }
    if (d.area == *s.min_area) s.minimizing_codes.push_back(d.code);
  }
  std::sort(s.minimizing_codes.begin(), s.minimizing_codes.end());
  return result;
}

}  // namespace finsler::opt
