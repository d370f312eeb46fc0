#pragma once

// SVG figures. Presentation only; never parsed back.
//
// Transforms (user units):
//   cylinder panel: boundary coordinate s -> x = 40 + 40 s, height h -> y = 300 - 40 h
//   disk panel:     boundary point at angle 2 pi s / n -> unit circle, scaled by 200
//                   and centred at (cx, 250); straight chords join wall endpoints
//   ball panel:     plane point z -> (250 + k z.x, 250 - k z.y), k fitting the ball into 400 units

#include <string>
#include <vector>

#include "finsler/disk.hpp"
#include "finsler/polygon.hpp"

namespace finsler::cli {

std::string render_family_svg(const disk::IntervalFamily& family);
std::string render_balls_svg(const std::vector<geom::Polygon>& balls);

}  // namespace finsler::cli
