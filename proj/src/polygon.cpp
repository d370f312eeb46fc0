#include "finsler/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace finsler::geom {

double signed_area(const Polygon& poly) noexcept {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

double area(const Polygon& poly) noexcept { return std::abs(signed_area(poly)); }

Polygon clip_halfplane(const Polygon& poly, double a, double b, double c) {
  Polygon out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint p = poly[i];
    const PlanePoint q = poly[(i + 1) % n];
    const double fp = a * p.x + b * p.y - c;
    const double fq = a * q.x + b * q.y - c;
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

Disk bounding_disk(const Polygon& poly) noexcept {
  if (poly.empty()) return {};
  double xmin = poly[0].x, xmax = poly[0].x, ymin = poly[0].y, ymax = poly[0].y;
  for (const auto& p : poly) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  Disk d{{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}, 0.0};
  for (const auto& p : poly) d.radius = std::max(d.radius, std::hypot(p.x - d.center.x, p.y - d.center.y));
  return d;
}

Polygon regular_polygon(std::size_t n, double radius, double phase) {
  Polygon poly(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    poly[k] = {radius * std::cos(t), radius * std::sin(t)};
  }
  return poly;
}

PointLocator::PointLocator(const Polygon& poly, std::size_t bands) {
  const std::size_t n = poly.size();
  if (n < 3) return;
  if (bands == 0) bands = std::max<std::size_t>(1, n / 4);
  xmin_ = xmax_ = poly[0].x;
  ymin_ = ymax_ = poly[0].y;
  for (const auto& p : poly) {
    xmin_ = std::min(xmin_, p.x);
    xmax_ = std::max(xmax_, p.x);
    ymin_ = std::min(ymin_, p.y);
    ymax_ = std::max(ymax_, p.y);
  }
  band_height_ = (ymax_ - ymin_) / static_cast<double>(bands);
  if (!(band_height_ > 0)) return;
  bands_.resize(bands);
  for (std::size_t i = 0; i < n; ++i) {
    const Edge e{poly[i].x, poly[i].y, poly[(i + 1) % n].x, poly[(i + 1) % n].y};
    const double lo = std::min(e.y0, e.y1);
    const double hi = std::max(e.y0, e.y1);
    const auto b0 = static_cast<std::size_t>(std::clamp((lo - ymin_) / band_height_, 0.0, double(bands - 1)));
    const auto b1 = static_cast<std::size_t>(std::clamp((hi - ymin_) / band_height_, 0.0, double(bands - 1)));
    for (std::size_t b = b0; b <= b1; ++b) bands_[b].push_back(e);
  }
}

bool PointLocator::contains(PlanePoint z) const noexcept {
  if (bands_.empty() || z.y < ymin_ || z.y >= ymax_ || z.x < xmin_ || z.x > xmax_) return false;
  const auto b = std::min(static_cast<std::size_t>((z.y - ymin_) / band_height_), bands_.size() - 1);
  bool inside = false;
  for (const auto& e : bands_[b]) {
    // Half-open rule on y avoids double counting shared vertices.
    if ((e.y0 > z.y) != (e.y1 > z.y)) {
      const double x = e.x0 + (z.y - e.y0) * (e.x1 - e.x0) / (e.y1 - e.y0);
      if (z.x < x) inside = !inside;
    }
  }
  return inside;
}

namespace {

// Seven-point degree-5 rule on the reference triangle (barycentric, weights sum to 1).
struct TriRule {
  double l1, l2, l3, w;
};
constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
constexpr double kW0 = 0.225, kW1 = 0.132394152788506, kW2 = 0.125939180544827;
constexpr TriRule kRule[7] = {
    {1.0 / 3, 1.0 / 3, 1.0 / 3, kW0}, {kA1, kB1, kB1, kW1}, {kB1, kA1, kB1, kW1}, {kB1, kB1, kA1, kW1},
    {kA2, kB2, kB2, kW2},             {kB2, kA2, kB2, kW2}, {kB2, kB2, kA2, kW2},
};

double integrate_triangle(PlanePoint a, PlanePoint b, PlanePoint c, const std::function<double(PlanePoint)>& f,
                          int levels) {
  if (levels > 0) {
    const PlanePoint ab{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    const PlanePoint bc{0.5 * (b.x + c.x), 0.5 * (b.y + c.y)};
    const PlanePoint ca{0.5 * (c.x + a.x), 0.5 * (c.y + a.y)};
    return integrate_triangle(a, ab, ca, f, levels - 1) + integrate_triangle(ab, b, bc, f, levels - 1) +
           integrate_triangle(ca, bc, c, f, levels - 1) + integrate_triangle(ab, bc, ca, f, levels - 1);
  }
  const double signed2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  if (signed2 == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& q : kRule) {
    sum += q.w * f({q.l1 * a.x + q.l2 * b.x + q.l3 * c.x, q.l1 * a.y + q.l2 * b.y + q.l3 * c.y});
  }
  return 0.5 * signed2 * sum;
}

}  // namespace

double integrate(const Polygon& poly, const std::function<double(PlanePoint)>& f, PlanePoint center, int levels) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += integrate_triangle(center, poly[i], poly[(i + 1) % n], f, levels);
  return signed_area(poly) < 0 ? -total : total;
}

}  // namespace finsler::geom
