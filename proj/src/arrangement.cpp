#include "finsler/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "finsler/error.hpp"

namespace finsler::chords {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoincident = 1e-11;

double wrap(double a) noexcept {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

}  // namespace

Arrangement::Arrangement(const ChordSet& chords) : chords_(chords) {
  const std::size_t n = chords.size();
  along_.resize(n);
  segment_edges_.resize(n);
  if (n == 0) {
    stats_.cells = 1;
    adjacency_.resize(1);
    return;
  }

  // Chord i: foot_i + t d_i for |t| < h_i.
  std::vector<PlanePoint> foot(n), dir(n);
  std::vector<double> half(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = chords.cos()[i], s = chords.sin()[i], p = chords.p()[i];
    foot[i] = {p * s, -p * c};
    dir[i] = {c, s};
    half[i] = std::sqrt(1.0 - p * p);
  }

  std::vector<std::pair<double, std::size_t>> boundary;  // (angle, vertex)
  for (std::size_t i = 0; i < n; ++i) {
    for (const double sign : {-1.0, 1.0}) {
      const double t = sign * half[i];
      const PlanePoint z{foot[i].x + t * dir[i].x, foot[i].y + t * dir[i].y};
      const std::size_t v = vertices_.size();
      vertices_.push_back(z);
      along_[i].push_back({t, v});
      boundary.emplace_back(wrap(std::atan2(z.y, z.x)), v);
    }
  }

  std::size_t interior = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double det = dir[i].x * dir[j].y - dir[i].y * dir[j].x;
      if (det == 0.0) continue;
      // foot_i + t d_i = foot_j + u d_j.
      const double rx = foot[j].x - foot[i].x, ry = foot[j].y - foot[i].y;
      const double t = (rx * dir[j].y - ry * dir[j].x) / det;
      const PlanePoint z{foot[i].x + t * dir[i].x, foot[i].y + t * dir[i].y};
      if (!(z.x * z.x + z.y * z.y < 1.0)) continue;
      const double u = (z.x - foot[j].x) * dir[j].x + (z.y - foot[j].y) * dir[j].y;
      const std::size_t v = vertices_.size();
      vertices_.push_back(z);
      along_[i].push_back({t, v});
      along_[j].push_back({u, v});
      ++interior;
    }
  }

  auto add_edge = [&](std::size_t a, std::size_t b, double angle_ab, double angle_ba, long chord, bool arc) {
    const std::size_t h = half_edges_.size();
    half_edges_.push_back({a, h + 1, 0, 0, angle_ab, chord, arc});
    half_edges_.push_back({b, h, 0, 0, angle_ba, chord, false});
    return h;
  };

  for (std::size_t i = 0; i < n; ++i) {
    auto& pts = along_[i];
    std::sort(pts.begin(), pts.end(), [](const ChordVertex& a, const ChordVertex& b) { return a.t < b.t; });
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (pts[k + 1].t - pts[k].t < kCoincident) {
        fail(ErrorKind::DegenerateArrangement, "three chords meet at one point");
      }
    }
    const double fwd = std::atan2(dir[i].y, dir[i].x);
    const double back = std::atan2(-dir[i].y, -dir[i].x);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      segment_edges_[i].push_back(add_edge(pts[k].vertex, pts[k + 1].vertex, fwd, back, static_cast<long>(i), false));
    }
  }

  std::sort(boundary.begin(), boundary.end());
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const auto& [a0, v0] = boundary[k];
    const auto& [a1, v1] = boundary[(k + 1) % boundary.size()];
    if (k + 1 < boundary.size() && a1 - a0 < kCoincident) {
      fail(ErrorKind::DegenerateArrangement, "two chords share a boundary point");
    }
    // Counter-clockwise tangent leaving v0, clockwise tangent leaving v1.
    const std::size_t h = add_edge(v0, v1, std::atan2(std::cos(a0), -std::sin(a0)),
                                   std::atan2(-std::cos(a1), std::sin(a1)), -1, true);
    arcs_.emplace_back(a0, h);
  }

  // Outgoing half-edges around each vertex in counter-clockwise order.
  std::vector<std::vector<std::size_t>> around(vertices_.size());
  for (std::size_t h = 0; h < half_edges_.size(); ++h) around[half_edges_[h].origin].push_back(h);
  std::vector<std::size_t> rank(half_edges_.size());
  for (auto& out : around) {
    std::sort(out.begin(), out.end(),
              [&](std::size_t a, std::size_t b) { return half_edges_[a].angle < half_edges_[b].angle; });
    for (std::size_t k = 0; k < out.size(); ++k) rank[out[k]] = k;
  }
  // next(h) is the outgoing edge just clockwise of twin(h); faces lie to the left.
  for (auto& h : half_edges_) {
    const std::size_t t = h.twin;
    const auto& out = around[half_edges_[t].origin];
    h.next = out[(rank[t] + out.size() - 1) % out.size()];
  }

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  for (auto& h : half_edges_) h.face = kUnset;
  std::size_t faces = 0;
  std::size_t outer = kUnset;
  for (std::size_t start = 0; start < half_edges_.size(); ++start) {
    if (half_edges_[start].face != kUnset) continue;
    std::size_t h = start;
    do {
      half_edges_[h].face = faces;
      if (half_edges_[h].chord < 0 && !half_edges_[h].ccw) outer = faces;
      h = half_edges_[h].next;
    } while (h != start);
    ++faces;
  }

  stats_.vertices = vertices_.size();
  stats_.edges = half_edges_.size() / 2;
  stats_.cells = faces - (outer == kUnset ? 0 : 1);
  if (stats_.cells != 1 + n + interior) {
    fail(ErrorKind::InternalInvariant, "arrangement cell count disagrees with Euler's formula");
  }

  adjacency_.assign(faces, {});
  for (const auto& h : half_edges_) {
    if (h.chord >= 0) adjacency_[h.face].push_back(half_edges_[h.twin].face);
  }
}

std::size_t Arrangement::locate(PlanePoint z) const {
  if (!(z.x * z.x + z.y * z.y < 1.0)) fail(ErrorKind::InvalidArgument, "query point must lie inside the open unit disk");
  if (half_edges_.empty()) return 0;

  // Nearest edge hit by the ray z + s (1, 0), s > 0.
  double best = std::sqrt(1.0 - z.y * z.y) - z.x;
  std::size_t best_edge = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < chords_.size(); ++i) {
    const double c = chords_.cos()[i], s = chords_.sin()[i], p = chords_.p()[i];
    const double off = z.x * s - z.y * c;
    if (std::abs(off - p) <= 1e-12) fail(ErrorKind::NonGenericPoint, "query point lies on a chord");
    if (s == 0.0) continue;
    const double hit = (p - off) / s;
    if (hit <= 0 || hit >= best) continue;
    const PlanePoint q{z.x + hit, z.y};
    const double t = q.x * c + q.y * s;
    const auto& pts = along_[i];
    const auto it = std::upper_bound(pts.begin(), pts.end(), t,
                                     [](double v, const ChordVertex& cv) { return v < cv.t; });
    if (it == pts.begin() || it == pts.end()) continue;
    const std::size_t k = static_cast<std::size_t>(it - pts.begin()) - 1;
    if (t - pts[k].t < 1e-12 || it->t - t < 1e-12) fail(ErrorKind::RayDegenerate, "location ray passes through a vertex");
    best = hit;
    best_edge = segment_edges_[i][k];
  }

  if (best_edge == std::numeric_limits<std::size_t>::max()) {
    const double a = wrap(std::atan2(z.y, z.x + best));
    auto it = std::upper_bound(arcs_.begin(), arcs_.end(), a,
                               [](double v, const std::pair<double, std::size_t>& arc) { return v < arc.first; });
    const std::size_t k = it == arcs_.begin() ? arcs_.size() - 1 : static_cast<std::size_t>(it - arcs_.begin()) - 1;
    return half_edges_[arcs_[k].second].face;
  }
  // The side of the segment facing back along the ray is to the left of the
  // orientation pointing upward.
  const HalfEdge& h = half_edges_[best_edge];
  const bool up = std::sin(h.angle) > 0;
  return up ? h.face : half_edges_[h.twin].face;
}

std::uint64_t Arrangement::cell_distance(PlanePoint x, PlanePoint y) const {
  const std::size_t fx = locate(x), fy = locate(y);
  if (fx == fy) return 0;
  std::vector<std::uint64_t> dist(adjacency_.size(), std::numeric_limits<std::uint64_t>::max());
  std::deque<std::size_t> queue{fx};
  dist[fx] = 0;
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop_front();
    for (const std::size_t g : adjacency_[f]) {
      if (dist[g] != std::numeric_limits<std::uint64_t>::max()) continue;
      dist[g] = dist[f] + 1;
      if (g == fy) return dist[g];
      queue.push_back(g);
    }
  }
  fail(ErrorKind::InternalInvariant, "cells of the disk are not connected");
}

std::uint64_t cell_graph_distance(const ChordSet& chords, PlanePoint x, PlanePoint y) {
  return Arrangement(chords).cell_distance(x, y);
}

}  // namespace finsler::chords
