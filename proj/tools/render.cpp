#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace finsler::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_family_svg(const disk::IntervalFamily& family) {
  const double n = static_cast<double>(family.circumference());
  const double tent_width = 80.0 + 40.0 * n;
  const double disk_cx = tent_width + 250.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << disk_cx + 250.0 << "\" height=\"520\">\n";
  svg << "<line x1=\"40\" y1=\"300\" x2=\"" << 40.0 + 40.0 * n << "\" y2=\"300\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < family.size(); ++i) {
    const double a = static_cast<double>(family[i].a2) / 2.0;
    const double len = static_cast<double>(family.length2(i)) / 2.0;
    const char* color = kPalette[i % std::size(kPalette)];
    // The tent may wrap; draw it on the lifted line and its copy shifted by -n.
    for (const double shift : {0.0, -n}) {
      const double x0 = a + shift, x1 = a + len + shift;
      if (x1 <= 0.0 || x0 >= n) continue;
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << 40 + 40 * x0 << ",300 "
          << 40 + 40 * (x0 + len / 2) << "," << 300 - 40 * (len / 2) << " " << 40 + 40 * x1 << ",300\"/>\n";
    }
    const double t0 = 2.0 * std::numbers::pi * a / n;
    const double t1 = 2.0 * std::numbers::pi * (a + len) / n;
    svg << "<line stroke=\"" << color << "\" x1=\"" << disk_cx + 200 * std::cos(t0) << "\" y1=\""
        << 250 - 200 * std::sin(t0) << "\" x2=\"" << disk_cx + 200 * std::cos(t1) << "\" y2=\""
        << 250 - 200 * std::sin(t1) << "\"/>\n";
  }
  svg << "<circle cx=\"" << disk_cx << "\" cy=\"250\" r=\"200\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string render_balls_svg(const std::vector<geom::Polygon>& balls) {
  double reach = 1e-12;
  for (const auto& b : balls) {
    for (const auto& z : b) reach = std::max(reach, std::hypot(z.x, z.y));
  }
  const double k = 200.0 / reach;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\">\n";
  svg << "<circle cx=\"250\" cy=\"250\" r=\"2\" fill=\"black\"/>\n";
  for (std::size_t i = 0; i < balls.size(); ++i) {
    svg << "<polygon fill=\"none\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" points=\"";
    for (const auto& z : balls[i]) svg << 250 + k * z.x << "," << 250 - k * z.y << " ";
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace finsler::cli
