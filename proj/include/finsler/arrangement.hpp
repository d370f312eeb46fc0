#pragma once

// Planar arrangement of chords inside the unit disk and breadth-first search
// over its cells. Independent of the offset-based separation count.

#include <cstdint>

#include "finsler/chords.hpp"

namespace finsler::chords {

struct ArrangementStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t cells = 0;  // inside the disk
};

class Arrangement {
 public:
  // Throws Error{DegenerateArrangement} on three concurrent chords or shared
  // boundary endpoints.
  explicit Arrangement(const ChordSet& chords);

  const ArrangementStats& stats() const noexcept { return stats_; }
  // Cell containing z. Throws Error{NonGenericPoint} if z is on a chord.
  std::size_t locate(PlanePoint z) const;
  // Fewest chord edges crossed between the cells of x and y.
  std::uint64_t cell_distance(PlanePoint x, PlanePoint y) const;

 private:
  struct HalfEdge {
    std::size_t origin, twin, next = 0, face = 0;
    double angle;       // departure direction at origin
    long chord = -1;    // -1 for boundary arcs
    bool ccw = false;   // arcs: counter-clockwise orientation
  };
  struct ChordVertex {
    double t;
    std::size_t vertex;
  };

  const ChordSet& chords_;
  std::vector<PlanePoint> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<std::vector<ChordVertex>> along_;         // per chord, sorted by t
  std::vector<std::vector<std::size_t>> segment_edges_;  // per chord, half-edge of each segment (forward)
  std::vector<std::pair<double, std::size_t>> arcs_;    // (start angle, ccw half-edge), sorted
  std::vector<std::vector<std::size_t>> adjacency_;
  ArrangementStats stats_;
};

std::uint64_t cell_graph_distance(const ChordSet& chords, PlanePoint x, PlanePoint y);

}  // namespace finsler::chords
