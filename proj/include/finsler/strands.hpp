#pragma once

// Universal-cover lift of a valid interval family and its decomposition into
// strands (maximal chains of adjacent arcs).
//
// Everything here works on the compacted family (see disk::compacted), so the
// circle has circumference n = number of walls and every semi-integer is a
// stop. Coordinates are doubled, as in disk.hpp.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "finsler/disk.hpp"

namespace finsler::strands {

using disk::Coord2;
using disk::HalfInteger;
using disk::IntervalFamily;

struct Strand {
  // Lifted stops of one traversal of the strand's own period, starting at its
  // least stop in [0, 2n).
  std::vector<Coord2> stops2;
  // widths2[k] = stops2[k + 1] - stops2[k], the last one wrapping to
  // stops2[0] + period2.
  std::vector<Coord2> widths2;
  // Translation after one traversal; a multiple of 2n.
  Coord2 period2 = 0;
};

struct StrandDecomposition {
  std::int64_t r = 0;
  std::int64_t n = 0;
  // Ordered by least stop in [0, 2n).
  std::vector<Strand> strands;

  Coord2 circumference2() const noexcept { return 2 * n; }
  // Index of the strand through a lifted stop (any odd integer).
  std::size_t strand_of(Coord2 stop2) const;
  // Stops of strand s inside the window [0, 2n).
  std::vector<Coord2> stops_in_period(std::size_t s) const;

 private:
  friend StrandDecomposition strand_decomposition(const IntervalFamily&);
  std::vector<Coord2> width_by_slot_;       // doubled width of the arc starting at each slot
  std::vector<std::int64_t> lift_by_slot_;  // lift index reached at each slot in its cycle traversal
  std::vector<std::size_t> cycle_by_slot_;
  std::vector<std::int64_t> cycle_k_;                      // strands per permutation cycle
  std::vector<std::vector<std::size_t>> cycle_strands_;    // [cycle][j] -> strand index
};

StrandDecomposition strand_decomposition(const IntervalFamily& family);

// A lifted arc: the lift of a wall to the universal cover R x [0, inf).
struct LiftedArc {
  Coord2 a2 = 0;
  Coord2 b2 = 0;
};

// Weighted self-intersections (interior crossings weight 1, boundary contacts
// of adjacent arcs weight 1/2) of the lifted system lying in the window
// [t2, t2 + width2). Interior crossings of the tents over [a, b] and [c, d]
// with a < c < b < d sit at abscissa (b + c) / 2. t2 must be even.
HalfInteger window_crossings(const IntervalFamily& family, Coord2 t2, Coord2 width2);

// window_crossings over a strip of width 2r.
HalfInteger strip_crossings(const IntervalFamily& family, Coord2 t2);

struct StripReport {
  HalfInteger crossings;
  // Number of arcs of each strand with both stops inside the strip.
  std::vector<std::int64_t> contained_arcs;
  // True when the contained arcs pairwise do not cross.
  bool contained_disjoint = true;
  // Interior crossings between strands s < u with abscissa in the strip,
  // row-major over the upper triangle.
  std::vector<std::vector<std::int64_t>> pair_crossings;
};

StripReport strip_report(const IntervalFamily& family, const StrandDecomposition& decomp, Coord2 t2);

// Some arc of width 1 (doubled width 2) as a pair of lifted stops, if any.
std::optional<std::pair<Coord2, Coord2>> width_one_arc(const StrandDecomposition& decomp);

}  // namespace finsler::strands
