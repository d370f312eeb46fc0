#pragma once

// Planar points and simple polygons: areas, half-plane clipping, fast
// point-in-polygon queries and triangle-fan quadrature.

#include <cstddef>
#include <functional>
#include <vector>

namespace finsler::geom {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

// Vertices in order, implicitly closed. Either orientation.
using Polygon = std::vector<PlanePoint>;

double signed_area(const Polygon& poly) noexcept;
double area(const Polygon& poly) noexcept;

// Part of a convex or simple polygon with a*x + b*y >= c (Sutherland-Hodgman).
// Exact for convex inputs, which is how it is used.
Polygon clip_halfplane(const Polygon& poly, double a, double b, double c);

struct Disk {
  PlanePoint center;
  double radius = 0.0;
};

// A disk containing the polygon (centered on the bounding box).
Disk bounding_disk(const Polygon& poly) noexcept;

// Regular n-gon inscribed in the circle of given radius, first vertex at angle phase.
Polygon regular_polygon(std::size_t n, double radius, double phase = 0.0);

// Even-odd point location with edges bucketed into horizontal bands, so a
// query touches O(n / bands) edges.
class PointLocator {
 public:
  explicit PointLocator(const Polygon& poly, std::size_t bands = 0);

  bool contains(PlanePoint z) const noexcept;

 private:
  struct Edge {
    double x0, y0, x1, y1;
  };
  double ymin_ = 0.0, ymax_ = 0.0, xmin_ = 0.0, xmax_ = 0.0, band_height_ = 1.0;
  std::vector<std::vector<Edge>> bands_;
};

// Integral of f over the polygon using signed triangles fanned from `center`
// (exact cancellation for any simple polygon), each split into 4^levels
// pieces and integrated by a degree-5 seven-point rule.
double integrate(const Polygon& poly, const std::function<double(PlanePoint)>& f, PlanePoint center,
                 int levels = 0);

}  // namespace finsler::geom
