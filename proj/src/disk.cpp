#include "finsler/disk.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace finsler::disk {

namespace {

// Offset of x from a along the positive direction, in [0, n2).
Coord2 offset(Coord2 x, Coord2 a, Coord2 n2) { return mod(x - a, n2); }

bool strictly_inside(const Interval& arc, Coord2 len2, Coord2 x, Coord2 n2) {
  const Coord2 off = offset(x, arc.a2, n2);
  return off > 0 && off < len2;
}

Rational rational_mod(const Rational& x, Coord2 m) {
  const auto num = x.numerator();
  const auto den = x.denominator();
  std::int64_t q = num / (den * m);
  Rational r = x - Rational(q * m);
  while (r < 0) r += m;
  while (r >= m) r -= m;
  return r;
}

std::vector<Coord2> endpoint_positions(const IntervalFamily& family) {
  std::vector<Coord2> pos;
  pos.reserve(2 * family.size());
  for (const auto& iv : family.intervals()) {
    pos.push_back(iv.a2);
    pos.push_back(iv.b2);
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  return pos;
}

void append_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

IntervalFamily::IntervalFamily(Coord2 circumference2, std::vector<Interval> intervals)
    : circumference2_(circumference2), intervals_(std::move(intervals)) {
  if (circumference2_ <= 0 || circumference2_ % 2 != 0) {
    fail(ErrorKind::InvalidArgument, "circumference2 must be a positive even integer");
  }
  for (auto& iv : intervals_) {
    iv.a2 = mod(iv.a2, circumference2_);
    iv.b2 = mod(iv.b2, circumference2_);
    if (iv.a2 % 2 == 0 || iv.b2 % 2 == 0) {
      fail(ErrorKind::InvalidArgument, "interval endpoints must be odd doubled coordinates");
    }
    if (iv.a2 == iv.b2) {
      fail(ErrorKind::InvalidArgument, "interval is empty or the full circle");
    }
  }
  std::sort(intervals_.begin(), intervals_.end());
  if (std::adjacent_find(intervals_.begin(), intervals_.end()) != intervals_.end()) {
    fail(ErrorKind::InvalidArgument, "duplicate interval");
  }
}

Coord2 IntervalFamily::length2(std::size_t i) const noexcept {
  return offset(intervals_[i].b2, intervals_[i].a2, circumference2_);
}

std::string HalfInteger::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

ValidationReport validate(const IntervalFamily& family) {
  ValidationReport report;
  const Coord2 n2 = family.circumference2();
  const std::size_t m = family.size();

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // The two closed arcs cover the circle iff the complement [b_i, a_i]
      // lies inside arc j.
      const Coord2 comp_len = n2 - family.length2(i);
      if (offset(family[i].b2, family[j].a2, n2) + comp_len <= family.length2(j)) {
        report.violations.emplace_back(CoverPair{i, j});
      }
    }
  }

  const auto positions = endpoint_positions(family);
  std::int64_t coverage = 0;
  if (!positions.empty()) {
    bool first = true;
    for (const Coord2 p : positions) {
      const Coord2 probe = mod(p + 1, n2);
      std::int64_t count = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (strictly_inside(family[i], family.length2(i), probe, n2)) ++count;
      }
      if (first) {
        coverage = count;
        first = false;
      } else if (count != coverage) {
        report.violations.emplace_back(CoverageMismatch{probe, count});
      }
    }
  }

  std::map<Coord2, EndpointDegree> degrees;
  for (const auto& iv : family.intervals()) {
    auto& s = degrees[iv.a2];
    s.point2 = iv.a2;
    ++s.starts;
    auto& e = degrees[iv.b2];
    e.point2 = iv.b2;
    ++e.ends;
  }
  for (const auto& [pos, deg] : degrees) {
    if (deg.starts != 1 || deg.ends != 1) report.violations.emplace_back(deg);
  }

  report.valid = report.violations.empty();
  if (report.valid) report.radius = coverage;
  return report;
}

std::int64_t require_valid(const IntervalFamily& family) {
  auto report = validate(family);
  if (!report.valid) fail(ErrorKind::InvalidFamily, "interval family is not a simple discrete disk");
  return *report.radius;
}

int pair_weight2(const IntervalFamily& family, std::size_t i, std::size_t j) {
  const Interval& x = family[i];
  const Interval& y = family[j];
  int shared = 0;
  for (Coord2 u : {x.a2, x.b2}) {
    for (Coord2 v : {y.a2, y.b2}) shared += (u == v);
  }
  if (shared > 0) return shared;
  const Coord2 n2 = family.circumference2();
  const Coord2 len = family.length2(i);
  const int inside = strictly_inside(x, len, y.a2, n2) + strictly_inside(x, len, y.b2, n2);
  return inside == 1 ? 2 : 0;
}

HalfInteger discrete_area_raw(const IntervalFamily& family) {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) twice += pair_weight2(family, i, j);
  }
  return HalfInteger(twice);
}

HalfInteger discrete_area(const IntervalFamily& family) {
  require_valid(family);
  return discrete_area_raw(family);
}

TentSide tent_side(const IntervalFamily& family, std::size_t i, const CylinderPoint& point) {
  const auto* c = std::get_if<CylinderCoord>(&point);
  if (c == nullptr) return TentSide::Outside;
  if (c->h2 < 0) fail(ErrorKind::InvalidArgument, "cylinder height must be nonnegative");
  const Coord2 n2 = family.circumference2();
  const Rational off = rational_mod(c->s2 - family[i].a2, n2);
  const Rational len(family.length2(i));
  if (off > len) return TentSide::Outside;
  const Rational height = std::min(off, len - off);
  if (c->h2 < height) return TentSide::Inside;
  if (c->h2 == height) return TentSide::OnBoundary;
  return TentSide::Outside;
}

std::int64_t discrete_distance_raw(const IntervalFamily& family, const CylinderPoint& p,
                                   const CylinderPoint& q) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const TentSide sp = tent_side(family, i, p);
    const TentSide sq = tent_side(family, i, q);
    if (sp == TentSide::OnBoundary || sq == TentSide::OnBoundary) {
      fail(ErrorKind::NonGenericPoint, "query point lies on a tent arc");
    }
    if ((sp == TentSide::Inside) != (sq == TentSide::Inside)) ++count;
  }
  return count;
}

std::int64_t discrete_distance(const IntervalFamily& family, const CylinderPoint& p,
                               const CylinderPoint& q) {
  require_valid(family);
  return discrete_distance_raw(family, p, q);
}

IntervalFamily compacted(const IntervalFamily& family) {
  const auto positions = endpoint_positions(family);
  if (positions.empty()) return IntervalFamily(2, {});
  auto slot = [&](Coord2 x) {
    const auto it = std::lower_bound(positions.begin(), positions.end(), x);
    return static_cast<Coord2>(it - positions.begin());
  };
  std::vector<Interval> out;
  out.reserve(family.size());
  for (const auto& iv : family.intervals()) {
    out.push_back({2 * slot(iv.a2) + 1, 2 * slot(iv.b2) + 1});
  }
  return IntervalFamily(2 * static_cast<Coord2>(positions.size()), std::move(out));
}

IntervalFamily rotated(const IntervalFamily& family, Coord2 shift2) {
  if (shift2 % 2 != 0) fail(ErrorKind::InvalidArgument, "rotation must be by an even doubled amount");
  std::vector<Interval> out(family.intervals().begin(), family.intervals().end());
  for (auto& iv : out) {
    iv.a2 += shift2;
    iv.b2 += shift2;
  }
  return IntervalFamily(family.circumference2(), std::move(out));
}

IntervalFamily reflected(const IntervalFamily& family) {
  std::vector<Interval> out;
  out.reserve(family.size());
  for (const auto& iv : family.intervals()) out.push_back({-iv.b2, -iv.a2});
  return IntervalFamily(family.circumference2(), std::move(out));
}

std::vector<std::uint8_t> canonical_code(const IntervalFamily& family) {
  const IntervalFamily c = compacted(family);
  const auto m = static_cast<std::size_t>(c.circumference());

  // starts[i]: sorted widths (in slots) of intervals starting at slot i.
  auto start_table = [m](const IntervalFamily& f) {
    std::vector<std::vector<std::uint64_t>> starts(m);
    for (std::size_t i = 0; i < f.size(); ++i) {
      starts[static_cast<std::size_t>(f[i].a2 / 2)].push_back(
          static_cast<std::uint64_t>(f.length2(i) / 2));
    }
    for (auto& s : starts) std::sort(s.begin(), s.end());
    return starts;
  };

  std::vector<std::uint64_t> best;
  for (const auto& f : {c, reflected(c)}) {
    const auto starts = start_table(f);
    for (std::size_t rot = 0; rot < m; ++rot) {
      std::vector<std::uint64_t> flat;
      flat.reserve(m + f.size());
      for (std::size_t k = 0; k < m; ++k) {
        const auto& s = starts[(rot + k) % m];
        flat.push_back(s.size());
        flat.insert(flat.end(), s.begin(), s.end());
      }
      if (best.empty() || flat < best) best = std::move(flat);
    }
  }

  std::vector<std::uint8_t> code;
  append_varint(code, family.empty() ? 0 : m);
  for (const auto v : best) append_varint(code, v);
  return code;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (const auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

IntervalFamily extremal_disk(std::int64_t r) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "extremal_disk requires r >= 1");
  std::vector<Interval> intervals;
  intervals.reserve(static_cast<std::size_t>(3 * r));
  for (std::int64_t k = 0; k < 3; ++k) {
    for (std::int64_t s2 = 1; s2 < 2 * r; s2 += 2) {
      intervals.push_back({2 * k * r - s2, 2 * k * r + s2});
    }
  }
  return IntervalFamily(6 * r, std::move(intervals));
}

}  // namespace finsler::disk
