#include "finsler/integral_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "finsler/rng.hpp"
#include "finsler/simd/kernels.hpp"

namespace finsler::ig {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double norm(PlanePoint z) noexcept { return std::hypot(z.x, z.y); }

double overlap(double lo, double hi, double a, double b) noexcept {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

// Truncated uniform: 1/4 int over theta of |[lo, hi] n [-P, P]|.
double uniform_truncated_distance(PlanePoint x, PlanePoint y, double p_max) {
  std::vector<double> cuts{0.0, kTwoPi};
  auto add_level_crossings = [&](PlanePoint z, double c) {
    const double r = norm(z);
    if (r <= std::abs(c)) return;
    const double alpha = std::atan2(z.y, z.x);
    const double s = std::asin(c / r);
    for (const double t : {alpha + s, alpha + kPi - s}) cuts.push_back(std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi));
  };
  for (const double c : {p_max, -p_max}) {
    add_level_crossings(x, c);
    add_level_crossings(y, c);
  }
  add_level_crossings({x.x - y.x, x.y - y.y}, 0.0);
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double t) {
    const double a = line_offset(x, t), b = line_offset(y, t);
    return overlap(std::min(a, b), std::max(a, b), -p_max, p_max);
  };
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (b <= a) continue;
    constexpr int kPieces = 8;
    for (int q = 0; q < kPieces; ++q) {
      sum += Gauss::integrate(f, a + (b - a) * q / kPieces, a + (b - a) * (q + 1) / kPieces);
    }
  }
  return 0.25 * sum;
}

double grid_distance(const GridDensity& g, double p_max, PlanePoint x, PlanePoint y) {
  using Gauss = boost::math::quadrature::gauss<double, 4>;
  const double dt = g.dtheta();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    const double a = dt * static_cast<double>(i);
    sum += Gauss::integrate(
        [&](double t) {
          double lo = line_offset(x, t), hi = line_offset(y, t);
          if (lo > hi) std::swap(lo, hi);
          lo = std::max(lo, -p_max);
          hi = std::min(hi, p_max);
          return hi > lo ? g.row_integral(i, lo, hi) : 0.0;
        },
        a, a + dt);
  }
  return 0.25 * sum;
}

double atom_distance(const Atom& a, PlanePoint x, PlanePoint y) {
  switch (a.kind) {
    case Atom::Kind::Uniform:
      if (a.p_max >= std::max(norm(x), norm(y))) return a.scale * a.density * std::hypot(x.x - y.x, x.y - y.y);
      return a.scale * a.density * uniform_truncated_distance(x, y, a.p_max);
    case Atom::Kind::Parallel: {
      const double ox = line_offset(x, a.family.theta), oy = line_offset(y, a.family.theta);
      return 0.25 * a.scale * a.family.weight *
             overlap(std::min(ox, oy), std::max(ox, oy), a.family.t_min, a.family.t_max);
    }
    case Atom::Kind::Grid:
      return a.scale * grid_distance(*a.grid, a.p_max, x, y);
  }
  return 0.0;
}

// Draws lines from a measure restricted (at least) to lines meeting a disk.
// Lines missing the disk may be drawn; they only ever contribute zeros.
class LineSampler {
 public:
  LineSampler(const std::vector<Atom>& atoms, geom::Disk disk) : disk_(disk) {
    for (const auto& a : atoms) {
      Part part{a, 0.0, {}, {}};
      const double oc_bound = norm(disk.center) + disk.radius;
      switch (a.kind) {
        case Atom::Kind::Uniform:
          part.band = a.p_max >= oc_bound;
          part.mass = a.scale * a.density * kTwoPi * 2.0 * (part.band ? disk.radius : a.p_max);
          break;
        case Atom::Kind::Parallel: {
          const double oc = line_offset(disk.center, a.family.theta);
          part.lo = std::max(a.family.t_min, oc - disk.radius);
          part.hi = std::min(a.family.t_max, oc + disk.radius);
          part.mass = a.scale * a.family.weight * std::max(0.0, part.hi - part.lo);
          break;
        }
        case Atom::Kind::Grid: {
          const auto& g = *a.grid;
          part.cells.reserve(g.n_theta() * g.n_p());
          double acc = 0.0;
          for (std::size_t i = 0; i < g.n_theta(); ++i) {
            for (std::size_t j = 0; j < g.n_p(); ++j) {
              const double p0 = g.p_min() + g.dp() * static_cast<double>(j);
              acc += g.value(i, j) * g.dtheta() * overlap(p0, p0 + g.dp(), -a.p_max, a.p_max);
              part.cells.push_back(acc);
            }
          }
          part.mass = a.scale * acc;
          break;
        }
      }
      if (part.mass > 0) {
        mass_ += part.mass;
        parts_.push_back(std::move(part));
        cumulative_.push_back(mass_);
      }
    }
  }

  double mass() const noexcept { return mass_; }

  // Uses draws [4 k, 4 k + 4) of the generator.
  LineCoord draw(const rng::CounterRng& g, std::uint64_t k) const {
    const double u0 = g.open01(4 * k) * mass_;
    const std::size_t which = std::min<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u0) - cumulative_.begin(), parts_.size() - 1);
    const Part& part = parts_[which];
    const double u1 = g.open01(4 * k + 1), u2 = g.open01(4 * k + 2);
    const Atom& a = part.atom;
    switch (a.kind) {
      case Atom::Kind::Uniform: {
        const double theta = kTwoPi * u1;
        if (part.band) {
          const double oc = line_offset(disk_.center, theta);
          return {theta, oc - disk_.radius + 2.0 * disk_.radius * u2};
        }
        return {theta, -a.p_max + 2.0 * a.p_max * u2};
      }
      case Atom::Kind::Parallel: {
        const double t = part.lo + (part.hi - part.lo) * u1;
        return u2 < 0.5 ? LineCoord{a.family.theta, t} : reversed(LineCoord{a.family.theta, t});
      }
      case Atom::Kind::Grid: {
        const auto& grid = *a.grid;
        const double target = u1 * part.cells.back();
        const std::size_t c = std::min<std::size_t>(
            std::upper_bound(part.cells.begin(), part.cells.end(), target) - part.cells.begin(),
            part.cells.size() - 1);
        const std::size_t i = c / grid.n_p(), j = c % grid.n_p();
        const double p0 = std::max(grid.p_min() + grid.dp() * static_cast<double>(j), -a.p_max);
        const double p1 = std::min(grid.p_min() + grid.dp() * static_cast<double>(j + 1), a.p_max);
        const double u3 = g.open01(4 * k + 3);
        return {grid.dtheta() * (static_cast<double>(i) + u3), p0 + (p1 - p0) * u2};
      }
    }
    return {};
  }

 private:
  struct Part {
    Atom atom;
    double mass = 0.0;
    std::vector<double> cells;  // Grid: cumulative cell masses
    bool band = false;          // Uniform: restricted to the disk band
    double lo = 0.0, hi = 0.0;  // Parallel: offset range
  };

  geom::Disk disk_;
  std::vector<Part> parts_;
  std::vector<double> cumulative_;
  double mass_ = 0.0;
};

}  // namespace

double line_offset(PlanePoint z, double theta) noexcept { return z.x * std::sin(theta) - z.y * std::cos(theta); }

double mu_distance(const LineMeasure& mu, PlanePoint x, PlanePoint y) {
  if (x == y) return 0.0;
  double d = 0.0;
  for (const auto& a : flatten(mu)) d += atom_distance(a, x, y);
  return d;
}

Polygon mu_ball(const LineMeasure& mu, double r, std::size_t resolution) {
  if (!(r > 0) || !std::isfinite(r)) fail(ErrorKind::InvalidArgument, "ball radius must be positive and finite");
  if (resolution < 3) fail(ErrorKind::InvalidArgument, "ball resolution must be at least 3");
  const auto atoms = flatten(mu);
  auto dist = [&](PlanePoint z) {
    double d = 0.0;
    for (const auto& a : atoms) d += atom_distance(a, {0.0, 0.0}, z);
    return d;
  };
  Polygon ball(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(resolution);
    const double ux = std::cos(phi), uy = std::sin(phi);
    double lo = 0.0, hi = r;
    while (dist({hi * ux, hi * uy}) < r) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e15 * r) fail(ErrorKind::RayDegenerate, "distance along a ray from O stays below the radius");
    }
    while (hi - lo > 1e-10 * hi) {
      const double mid = 0.5 * (lo + hi);
      (dist({mid * ux, mid * uy}) < r ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    ball[k] = {s * ux, s * uy};
  }
  return ball;
}

namespace {

double max_vertex_norm(const std::vector<PlanePoint>& pts) noexcept {
  double m = 0.0;
  for (const auto& z : pts) m = std::max(m, norm(z));
  return m;
}

// Region between the offsets t_min <= offset(z, theta) <= t_max.
Polygon clip_to_strip(Polygon poly, const ParallelFamily& f) {
  const double s = std::sin(f.theta), c = std::cos(f.theta);
  poly = geom::clip_halfplane(poly, s, -c, f.t_min);
  if (std::isfinite(f.t_max)) poly = geom::clip_halfplane(poly, -s, c, -f.t_max);
  return poly;
}

double closed_area(const std::vector<Atom>& atoms, const Polygon& region) {
  const double reach = max_vertex_norm(region);
  const double area = geom::area(region);
  double pairs = 0.0;  // int int #(l0 n l1 n D) over ordered pairs
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (a.kind == Atom::Kind::Grid) {
      fail(ErrorKind::UnsupportedClosedForm, "closed-form area is not available for grid densities");
    }
    if (a.kind == Atom::Kind::Uniform && a.p_max < reach) {
      fail(ErrorKind::UnsupportedClosedForm, "closed-form area needs the truncation to clear the region");
    }
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const Atom& b = atoms[j];
      const bool ua = a.kind == Atom::Kind::Uniform, ub = b.kind == Atom::Kind::Uniform;
      if (ua && ub) {
        pairs += 8.0 * kPi * a.scale * a.density * b.scale * b.density * area;
      } else if (ua || ub) {
        const Atom& u = ua ? a : b;
        const Atom& f = ua ? b : a;
        pairs += 4.0 * u.scale * u.density * f.scale * f.family.weight * geom::area(clip_to_strip(region, f.family));
      } else {
        const double sine = std::abs(std::sin(a.family.theta - b.family.theta));
        if (i == j || sine < 1e-15) continue;
        const Polygon both = clip_to_strip(clip_to_strip(region, a.family), b.family);
        pairs += a.scale * a.family.weight * b.scale * b.family.weight * sine * geom::area(both);
      }
    }
  }
  return pairs / (8.0 * kPi);
}

bool intersection(LineCoord l0, LineCoord l1, PlanePoint& out) noexcept {
  const double ax = std::sin(l0.theta), ay = -std::cos(l0.theta);
  const double bx = std::sin(l1.theta), by = -std::cos(l1.theta);
  const double det = ax * by - ay * bx;
  if (std::abs(det) < 1e-15) return false;
  out = {(l0.p * by - l1.p * ay) / det, (ax * l1.p - bx * l0.p) / det};
  return true;
}

// Pair-crossing density phi(z), so that area = int_D phi.
class CrossingDensity {
 public:
  CrossingDensity(const std::vector<Atom>& atoms, std::size_t theta_nodes) {
    for (const auto& a : atoms) (a.kind == Atom::Kind::Parallel ? families_ : densities_).push_back(a);
    std::size_t n = theta_nodes;
    if (n == 0) {
      // A multiple of every grid's theta count, so nodes never straddle cells.
      std::size_t base = 1;
      for (const auto& a : densities_) {
        if (a.kind == Atom::Kind::Grid) base = std::lcm(base, a.grid->n_theta());
      }
      n = base * ((720 + base - 1) / base);
    }
    n += n % 2;
    n_ = n;
    m_ = n / 2;
    dtheta_ = kTwoPi / static_cast<double>(n_);
    theta_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) theta_[i] = dtheta_ * (static_cast<double>(i) + 0.5);
    kext_.resize(2 * m_);
    for (std::size_t t = 0; t < 2 * m_; ++t) {
      kext_[t] = std::abs(std::sin(kPi * static_cast<double>(t % m_) / static_cast<double>(m_)));
    }
  }

  double operator()(PlanePoint z) const {
    std::vector<double> a(n_, 0.0);
    if (!densities_.empty()) {
      for (std::size_t i = 0; i < n_; ++i) {
        const double p = line_offset(z, theta_[i]);
        for (const auto& d : densities_) a[i] += d.density_at(theta_[i], p);
      }
    }
    double pairs = 0.0;
    if (!densities_.empty()) {
      // |sin| has period pi, so nodes i and i + m fold together.
      std::vector<double> b(m_);
      for (std::size_t i = 0; i < m_; ++i) b[i] = a[i] + a[i + m_];
      const auto& k = simd::kernels();
      double q = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (b[i] != 0.0) q += b[i] * k.dot(b.data(), kext_.data() + (m_ - i), m_);
      }
      pairs += dtheta_ * dtheta_ * q;
    }
    for (std::size_t f = 0; f < families_.size(); ++f) {
      const Atom& fa = families_[f];
      if (!inside(fa, z)) continue;
      const double w = fa.scale * fa.family.weight;
      if (!densities_.empty()) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += a[i] * std::abs(std::sin(theta_[i] - fa.family.theta));
        pairs += 2.0 * w * dtheta_ * s;
      }
      for (std::size_t g = 0; g < families_.size(); ++g) {
        const Atom& fb = families_[g];
        if (g == f || !inside(fb, z)) continue;
        pairs += w * fb.scale * fb.family.weight * std::abs(std::sin(fa.family.theta - fb.family.theta));
      }
    }
    return pairs / (8.0 * kPi);
  }

  // True when phi is constant on the region.
  bool constant_on(const Polygon& region) const {
    if (!families_.empty()) return false;
    const double reach = max_vertex_norm(region);
    return std::all_of(densities_.begin(), densities_.end(),
                       [&](const Atom& a) { return a.kind == Atom::Kind::Uniform && a.p_max >= reach; });
  }

 private:
  static bool inside(const Atom& a, PlanePoint z) noexcept {
    const double o = line_offset(z, a.family.theta);
    return o >= a.family.t_min && o <= a.family.t_max;
  }

  std::vector<Atom> densities_, families_;
  std::size_t n_ = 0, m_ = 0;
  double dtheta_ = 0.0;
  std::vector<double> theta_, kext_;
};

}  // namespace

Estimate santalo_area(const LineMeasure& mu, const Polygon& region, const Method& method) {
  if (region.size() < 3 || geom::area(region) == 0.0) return {};
  const auto atoms = flatten(mu);
  if (std::holds_alternative<Closed>(method)) return {closed_area(atoms, region), 0.0};

  if (const auto* q = std::get_if<Quadrature>(&method)) {
    const CrossingDensity phi(atoms, q->theta_nodes);
    if (phi.constant_on(region)) return {phi(geom::bounding_disk(region).center) * geom::area(region), 0.0};
    return {geom::integrate(region, phi, geom::bounding_disk(region).center, q->levels), 0.0};
  }

  const auto& mc = std::get<MonteCarlo>(method);
  if (mc.samples == 0) fail(ErrorKind::InvalidArgument, "Monte Carlo needs at least one sample");
  const LineSampler sampler(atoms, geom::bounding_disk(region));
  const double mass = sampler.mass();
  if (!std::isfinite(mass)) fail(ErrorKind::NumericBudgetExceeded, "restricted measure has infinite mass");
  if (mass == 0.0) return {};
  const geom::PointLocator locator(region);
  const rng::CounterRng g(mc.seed, 0x5a7a);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < mc.samples; ++k) {
    PlanePoint z;
    if (intersection(sampler.draw(g, 2 * k), sampler.draw(g, 2 * k + 1), z) && locator.contains(z)) ++hits;
  }
  const double n = static_cast<double>(mc.samples);
  const double frac = static_cast<double>(hits) / n;
  const double scale = mass * mass / (8.0 * kPi);
  return {scale * frac, scale * std::sqrt(frac * (1.0 - frac) / n)};
}

Estimate crofton_length(const LineMeasure& mu, const std::vector<PlanePoint>& polyline, const Method& method) {
  if (polyline.size() < 2) return {};
  const auto atoms = flatten(mu);
  if (!std::holds_alternative<MonteCarlo>(method)) {
    if (std::holds_alternative<Closed>(method)) {
      for (const auto& a : atoms) {
        if (a.kind == Atom::Kind::Grid) {
          fail(ErrorKind::UnsupportedClosedForm, "closed-form length is not available for grid densities");
        }
      }
    }
    double length = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) length += mu_distance(mu, polyline[i], polyline[i + 1]);
    return {length, 0.0};
  }

  const auto& mc = std::get<MonteCarlo>(method);
  if (mc.samples == 0) fail(ErrorKind::InvalidArgument, "Monte Carlo needs at least one sample");
  const LineSampler sampler(atoms, geom::bounding_disk(polyline));
  const double mass = sampler.mass();
  if (!std::isfinite(mass)) fail(ErrorKind::NumericBudgetExceeded, "restricted measure has infinite mass");
  if (mass == 0.0) return {};
  const rng::CounterRng g(mc.seed, 0xc0f7);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t k = 0; k < mc.samples; ++k) {
    const LineCoord l = sampler.draw(g, k);
    int crossings = 0;
    double prev = line_offset(polyline[0], l.theta) - l.p;
    for (std::size_t i = 1; i < polyline.size(); ++i) {
      const double cur = line_offset(polyline[i], l.theta) - l.p;
      crossings += (prev < 0 && cur > 0) || (prev > 0 && cur < 0);
      prev = cur;
    }
    sum += crossings;
    sum2 += static_cast<double>(crossings) * crossings;
  }
  const double n = static_cast<double>(mc.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return {0.25 * mass * mean, 0.25 * mass * std::sqrt(var / n)};
}

}  // namespace finsler::ig
