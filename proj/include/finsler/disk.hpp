#pragma once

// Simple discrete metric disks encoded as families of boundary intervals.
//
// All boundary coordinates are stored doubled: a circle of circumference n
// becomes the integers mod 2n and wall endpoints (semi-integers) become odd
// integers. Areas are exact half-integers.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "finsler/error.hpp"

namespace finsler::disk {

using Coord2 = std::int64_t;
using Rational = boost::rational<std::int64_t>;

// Positively oriented arc from a2 to b2 (doubled coordinates).
struct Interval {
  Coord2 a2 = 0;
  Coord2 b2 = 0;

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

class IntervalFamily {
 public:
  IntervalFamily() = default;

  // Reduces endpoints into [0, circumference2), sorts, and checks the type
  // invariants (odd endpoints, nonempty proper arcs, no duplicates).
  // Throws Error{InvalidArgument} on violation.
  IntervalFamily(Coord2 circumference2, std::vector<Interval> intervals);

  Coord2 circumference2() const noexcept { return circumference2_; }
  Coord2 circumference() const noexcept { return circumference2_ / 2; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  std::span<const Interval> intervals() const noexcept { return intervals_; }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  // Doubled arc length of interval i, in (0, circumference2).
  Coord2 length2(std::size_t i) const noexcept;

  friend bool operator==(const IntervalFamily&, const IntervalFamily&) = default;

 private:
  Coord2 circumference2_ = 2;
  std::vector<Interval> intervals_;
};

// Reduces x into [0, m).
constexpr Coord2 mod(Coord2 x, Coord2 m) noexcept {
  const Coord2 r = x % m;
  return r < 0 ? r + m : r;
}

class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr explicit HalfInteger(std::int64_t twice) : twice_(twice) {}
  static constexpr HalfInteger from_integer(std::int64_t k) { return HalfInteger(2 * k); }

  constexpr std::int64_t twice_value() const noexcept { return twice_; }
  constexpr double to_double() const noexcept { return static_cast<double>(twice_) / 2.0; }
  // "k" when integral, "k/2" otherwise.
  std::string to_string() const;

  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  std::int64_t twice_ = 0;
};

struct CoverPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const CoverPair&, const CoverPair&) = default;
};
struct CoverageMismatch {
  Coord2 point2 = 0;
  std::int64_t count = 0;
  friend bool operator==(const CoverageMismatch&, const CoverageMismatch&) = default;
};
struct EndpointDegree {
  Coord2 point2 = 0;
  std::int64_t starts = 0;
  std::int64_t ends = 0;
  std::int64_t degree() const noexcept { return starts + ends; }
  friend bool operator==(const EndpointDegree&, const EndpointDegree&) = default;
};
using Violation = std::variant<CoverPair, CoverageMismatch, EndpointDegree>;

struct ValidationReport {
  bool valid = false;
  std::optional<std::int64_t> radius;
  std::vector<Violation> violations;
};

// The three conditions characterizing interval families of simple discrete
// disks: no two intervals cover the circle, constant coverage r at generic
// points, and every endpoint position is the end of exactly one interval and
// the start of exactly one other.
ValidationReport validate(const IntervalFamily& family);

// Throws Error{InvalidFamily} unless validate(family).valid; returns r.
std::int64_t require_valid(const IntervalFamily& family);

// Sum over unordered pairs: 1 per interior crossing, 1/2 per shared endpoint.
HalfInteger discrete_area(const IntervalFamily& family);
HalfInteger discrete_area_raw(const IntervalFamily& family);

// Pair contribution of intervals i and j to the area, doubled (0, 1 or 2).
int pair_weight2(const IntervalFamily& family, std::size_t i, std::size_t j);

// Point of the punctured disk seen as the flat cylinder S^1 x [0, inf), or the
// center (the point at infinity). s2 and h2 are in doubled units.
struct Center {
  friend bool operator==(const Center&, const Center&) = default;
};
struct CylinderCoord {
  Rational s2;
  Rational h2;
  friend bool operator==(const CylinderCoord&, const CylinderCoord&) = default;
};
using CylinderPoint = std::variant<Center, CylinderCoord>;

enum class TentSide { Inside, Outside, OnBoundary };

// Position of a point relative to the standard (tent) realization of interval i:
// slope +1 from a, slope -1 to b.
TentSide tent_side(const IntervalFamily& family, std::size_t i, const CylinderPoint& point);

// Number of tents that strictly contain exactly one of p, q. Equals the
// discrete distance for valid families.
std::int64_t discrete_distance(const IntervalFamily& family, const CylinderPoint& p,
                               const CylinderPoint& q);
std::int64_t discrete_distance_raw(const IntervalFamily& family, const CylinderPoint& p,
                                   const CylinderPoint& q);

// Order-preserving relabeling of the used endpoint positions onto the odd
// grid of a circle whose circumference equals the number of used positions.
IntervalFamily compacted(const IntervalFamily& family);

// Rotation by shift2 (even) and optional reflection x -> -x.
IntervalFamily rotated(const IntervalFamily& family, Coord2 shift2);
IntervalFamily reflected(const IntervalFamily& family);

// Lexicographically least encoding of the compacted endpoint pattern over all
// rotations and both orientations.
std::vector<std::uint8_t> canonical_code(const IntervalFamily& family);
std::string to_hex(std::span<const std::uint8_t> bytes);

// Circumference 3r with the nested arcs (kr - s, kr + s), k = 0, 1, 2 and
// s = 1/2, 3/2, ..., r - 1/2. Area 3r^2/2.
IntervalFamily extremal_disk(std::int64_t r);

}  // namespace finsler::disk
