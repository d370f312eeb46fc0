#include "finsler/strands.hpp"

#include <algorithm>
#include <numeric>

namespace finsler::strands {

namespace {

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Compacted valid family with r >= 1; returns doubled widths by slot.
std::vector<Coord2> widths_by_slot(const IntervalFamily& compact) {
  const auto n = static_cast<std::size_t>(compact.circumference());
  std::vector<Coord2> width(n, 0);
  for (std::size_t i = 0; i < compact.size(); ++i) {
    width[static_cast<std::size_t>(compact[i].a2 / 2)] = compact.length2(i);
  }
  return width;
}

IntervalFamily checked_compact(const IntervalFamily& family) {
  const auto r = disk::require_valid(family);
  if (r < 1) fail(ErrorKind::InvalidFamily, "strand analysis needs radius r >= 1");
  return disk::compacted(family);
}

std::vector<LiftedArc> lifted_arcs_overlapping(const IntervalFamily& compact, Coord2 lo2, Coord2 hi2) {
  const Coord2 n2 = compact.circumference2();
  std::vector<LiftedArc> arcs;
  for (std::size_t i = 0; i < compact.size(); ++i) {
    const Coord2 a = compact[i].a2;
    const Coord2 len = compact.length2(i);
    const std::int64_t k_lo = floor_div(lo2 - a - len, n2);
    const std::int64_t k_hi = floor_div(hi2 - a, n2) + 1;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const Coord2 s = a + k * n2;
      if (s + len >= lo2 && s <= hi2) arcs.push_back({s, s + len});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const LiftedArc& x, const LiftedArc& y) { return x.a2 < y.a2; });
  return arcs;
}

// Doubled abscissa of the crossing of two lifted tents, if they cross in the interior.
std::optional<Coord2> crossing_abscissa2(const LiftedArc& x, const LiftedArc& y) {
  const LiftedArc& l = x.a2 < y.a2 ? x : y;
  const LiftedArc& r = x.a2 < y.a2 ? y : x;
  if (l.a2 < r.a2 && r.a2 < l.b2 && l.b2 < r.b2) return (l.b2 + r.a2) / 2;
  return std::nullopt;
}

}  // namespace

StrandDecomposition strand_decomposition(const IntervalFamily& family) {
  const IntervalFamily compact = checked_compact(family);
  const std::int64_t n = compact.circumference();
  const auto un = static_cast<std::size_t>(n);
  const Coord2 n2 = 2 * n;

  StrandDecomposition d;
  d.r = *disk::validate(compact).radius;
  d.n = n;
  d.width_by_slot_ = widths_by_slot(compact);
  d.lift_by_slot_.assign(un, 0);
  d.cycle_by_slot_.assign(un, 0);

  struct PendingStrand {
    std::size_t cycle;
    std::int64_t j;
    Coord2 least_stop2;
  };
  std::vector<PendingStrand> pending;
  std::vector<std::vector<std::int64_t>> cycle_slots;

  std::vector<bool> seen(un, false);
  for (std::size_t s0 = 0; s0 < un; ++s0) {
    if (seen[s0]) continue;
    const std::size_t c = cycle_slots.size();
    cycle_slots.emplace_back();
    Coord2 x2 = 2 * static_cast<Coord2>(s0) + 1;
    do {
      const auto slot = static_cast<std::size_t>(disk::mod(x2, n2) / 2);
      seen[slot] = true;
      d.cycle_by_slot_[slot] = c;
      d.lift_by_slot_[slot] = floor_div(x2, n2);
      cycle_slots.back().push_back(static_cast<std::int64_t>(slot));
      x2 += d.width_by_slot_[slot];
    } while (disk::mod(x2, n2) != 2 * static_cast<Coord2>(s0) + 1);
    const Coord2 displacement2 = x2 - (2 * static_cast<Coord2>(s0) + 1);
    const std::int64_t k = displacement2 / n2;
    d.cycle_k_.push_back(k);
    for (std::int64_t j = 0; j < k; ++j) {
      Coord2 least = n2;
      for (const auto slot : cycle_slots[c]) {
        if (disk::mod(d.lift_by_slot_[static_cast<std::size_t>(slot)] + j, k) == 0) {
          least = std::min(least, 2 * slot + 1);
        }
      }
      pending.push_back({c, j, least});
    }
  }

  std::sort(pending.begin(), pending.end(),
            [](const PendingStrand& a, const PendingStrand& b) { return a.least_stop2 < b.least_stop2; });
  d.cycle_strands_.resize(cycle_slots.size());
  for (std::size_t c = 0; c < cycle_slots.size(); ++c) {
    d.cycle_strands_[c].assign(static_cast<std::size_t>(d.cycle_k_[c]), 0);
  }
  for (std::size_t idx = 0; idx < pending.size(); ++idx) {
    const auto& p = pending[idx];
    d.cycle_strands_[p.cycle][static_cast<std::size_t>(p.j)] = idx;
    Strand strand;
    const std::size_t length = cycle_slots[p.cycle].size();
    Coord2 x2 = p.least_stop2;
    for (std::size_t step = 0; step < length; ++step) {
      const Coord2 w = d.width_by_slot_[static_cast<std::size_t>(disk::mod(x2, n2) / 2)];
      strand.stops2.push_back(x2);
      strand.widths2.push_back(w);
      x2 += w;
    }
    strand.period2 = x2 - p.least_stop2;
    d.strands.push_back(std::move(strand));
  }

  if (static_cast<std::int64_t>(d.strands.size()) != d.r) {
    fail(ErrorKind::InternalInvariant, "strand count differs from the radius");
  }
  return d;
}

std::size_t StrandDecomposition::strand_of(Coord2 stop2) const {
  if (stop2 % 2 == 0) fail(ErrorKind::InvalidArgument, "stops are odd doubled coordinates");
  const Coord2 n2 = circumference2();
  const auto slot = static_cast<std::size_t>(disk::mod(stop2, n2) / 2);
  const std::int64_t q = floor_div(stop2, n2);
  const std::size_t c = cycle_by_slot_[slot];
  const std::int64_t j = disk::mod(q - lift_by_slot_[slot], cycle_k_[c]);
  return cycle_strands_[c][static_cast<std::size_t>(j)];
}

std::vector<Coord2> StrandDecomposition::stops_in_period(std::size_t s) const {
  std::vector<Coord2> out;
  for (Coord2 x2 = 1; x2 < circumference2(); x2 += 2) {
    if (strand_of(x2) == s) out.push_back(x2);
  }
  return out;
}

HalfInteger window_crossings(const IntervalFamily& family, Coord2 t2, Coord2 width2) {
  if (t2 % 2 != 0) fail(ErrorKind::NonGenericCut, "strip boundary must not be a stop (use even t2)");
  if (width2 <= 0) fail(ErrorKind::InvalidArgument, "window width must be positive");
  disk::require_valid(family);
  if (family.empty()) return HalfInteger(0);
  const IntervalFamily compact = disk::compacted(family);
  const Coord2 hi2 = t2 + width2;

  // Every odd position is a stop where exactly two adjacent arcs meet.
  const std::int64_t stops = width2 / 2;
  std::int64_t twice = stops;

  const auto arcs = lifted_arcs_overlapping(compact, t2, hi2);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (arcs[j].a2 >= arcs[i].b2) break;
      if (auto x = crossing_abscissa2(arcs[i], arcs[j]); x && *x >= t2 && *x < hi2) twice += 2;
    }
  }
  return HalfInteger(twice);
}

HalfInteger strip_crossings(const IntervalFamily& family, Coord2 t2) {
  const auto r = disk::require_valid(family);
  if (r == 0) return HalfInteger(0);
  return window_crossings(family, t2, 4 * r);
}

StripReport strip_report(const IntervalFamily& family, const StrandDecomposition& decomp, Coord2 t2) {
  StripReport report;
  report.crossings = strip_crossings(family, t2);
  const IntervalFamily compact = disk::compacted(family);
  const Coord2 hi2 = t2 + 4 * decomp.r;
  const auto rs = static_cast<std::size_t>(decomp.r);
  report.contained_arcs.assign(rs, 0);
  report.pair_crossings.assign(rs, std::vector<std::int64_t>(rs, 0));

  const auto arcs = lifted_arcs_overlapping(compact, t2, hi2);
  std::vector<LiftedArc> contained;
  for (const auto& a : arcs) {
    if (a.a2 >= t2 && a.b2 < hi2) {
      ++report.contained_arcs[decomp.strand_of(a.a2)];
      contained.push_back(a);
    }
  }
  for (std::size_t i = 0; i < contained.size(); ++i) {
    for (std::size_t j = i + 1; j < contained.size(); ++j) {
      if (crossing_abscissa2(contained[i], contained[j])) report.contained_disjoint = false;
    }
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      auto x = crossing_abscissa2(arcs[i], arcs[j]);
      if (!x || *x < t2 || *x >= hi2) continue;
      std::size_t s = decomp.strand_of(arcs[i].a2);
      std::size_t u = decomp.strand_of(arcs[j].a2);
      if (s > u) std::swap(s, u);
      ++report.pair_crossings[s][u];
    }
  }
  return report;
}

std::optional<std::pair<Coord2, Coord2>> width_one_arc(const StrandDecomposition& decomp) {
  for (const auto& strand : decomp.strands) {
    for (std::size_t k = 0; k < strand.stops2.size(); ++k) {
      if (strand.widths2[k] == 2) return std::pair{strand.stops2[k], strand.stops2[k] + 2};
    }
  }
  return std::nullopt;
}

}  // namespace finsler::strands
