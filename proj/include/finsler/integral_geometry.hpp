#pragma once

// Projective distances, metric balls, Crofton lengths and Santalo areas
// induced by line measures:
//   d_mu(x, y)   = 1/4 mu(lines strictly separating x from y),
//   length(c)    = 1/4 int #(line n c) dmu,
//   area_mu(D)   = 1/(8 pi) int int #(line0 n line1 n D) dmu dmu.

#include <cstdint>
#include <variant>

#include "finsler/line_measure.hpp"
#include "finsler/polygon.hpp"

namespace finsler::ig {

using geom::PlanePoint;
using geom::Polygon;

// Offset of the line through z with direction theta: z.x sin(theta) - z.y cos(theta).
double line_offset(PlanePoint z, double theta) noexcept;

double mu_distance(const LineMeasure& mu, PlanePoint x, PlanePoint y);

// Boundary of the ball of radius r about O, traced along `resolution`
// equally spaced rays (the first along +x) by bisection to relative 1e-9.
// Throws Error{RayDegenerate} if some ray never reaches distance r.
Polygon mu_ball(const LineMeasure& mu, double r, std::size_t resolution = 360);

struct Closed {};
struct MonteCarlo {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};
struct Quadrature {
  std::size_t theta_nodes = 0;  // 0 picks a default from the measure
  int levels = 1;               // triangle refinement levels
};
using Method = std::variant<Closed, MonteCarlo, Quadrature>;

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for deterministic methods
};

// Closed handles Uniform (truncation not reaching the region) and
// ParallelFamily atoms; Quadrature handles every atom kind.
Estimate santalo_area(const LineMeasure& mu, const Polygon& region, const Method& method);

// Open polyline through the given points.
Estimate crofton_length(const LineMeasure& mu, const std::vector<PlanePoint>& polyline, const Method& method);

}  // namespace finsler::ig
