#include "finsler/line_measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace finsler::ig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) noexcept {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::InvalidArgument, what);
}

void flatten_into(const LineMeasure& mu, double scale, double p_max, std::vector<Atom>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          Atom a;
          a.kind = Atom::Kind::Uniform;
          a.scale = scale;
          a.p_max = p_max;
          a.density = v.density;
          out.push_back(a);
        } else if constexpr (std::is_same_v<T, ParallelFamily>) {
          ParallelFamily f = v;
          f.t_max = std::min(f.t_max, p_max);
          if (f.t_max <= f.t_min) return;
          Atom a;
          a.kind = Atom::Kind::Parallel;
          a.scale = scale;
          a.p_max = p_max;
          a.family = f;
          out.push_back(a);
        } else if constexpr (std::is_same_v<T, GridDensity>) {
          Atom a;
          a.kind = Atom::Kind::Grid;
          a.scale = scale;
          a.p_max = p_max;
          a.grid = &v;
          out.push_back(a);
        } else if constexpr (std::is_same_v<T, Truncated>) {
          flatten_into(*v.inner, scale, std::min(p_max, v.p_max), out);
        } else {
          for (const auto& [w, part] : v.parts) {
            if (w > 0) flatten_into(part, scale * w, p_max, out);
          }
        }
      },
      mu.variant());
}

// Unnormalized kernel pieces on (-1, 1).
double raw_bump(double u) noexcept {
  const double q = 1.0 - u * u;
  return q > 0 ? std::exp(-1.0 / q) : 0.0;
}

struct KernelTable {
  static constexpr int kPanels = 2048;
  std::array<double, kPanels + 1> cdf{};    // int_{-1}^{u_k} raw_bump
  std::array<double, kPanels + 1> first{};  // int_{-1}^{u_k} s raw_bump(s) ds
  double norm = 1.0;

  KernelTable() {
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    for (int k = 0; k < kPanels; ++k) {
      const double a = node(k), b = node(k + 1);
      cdf[k + 1] = cdf[k] + Gauss::integrate(raw_bump, a, b);
      first[k + 1] = first[k] + Gauss::integrate([](double s) { return s * raw_bump(s); }, a, b);
    }
    norm = cdf[kPanels];
  }
  static double node(int k) noexcept { return -1.0 + 2.0 * k / kPanels; }

  // Integrals from -1 to u, u in [-1, 1], of raw_bump and s * raw_bump.
  std::pair<double, double> partial(double u) const noexcept {
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const int k = std::clamp(static_cast<int>((u + 1.0) * 0.5 * kPanels), 0, kPanels - 1);
    const double a = node(k);
    if (u <= a) return {cdf[k], first[k]};
    return {cdf[k] + Gauss::integrate(raw_bump, a, u),
            first[k] + Gauss::integrate([](double s) { return s * raw_bump(s); }, a, u)};
  }
};

const KernelTable& kernel_table() {
  static const KernelTable table;
  return table;
}

}  // namespace

LineCoord reversed(LineCoord line) noexcept { return {wrap_angle(line.theta + std::numbers::pi), -line.p}; }

GridDensity::GridDensity(std::size_t n_theta, std::size_t n_p, double p_min, double dp, std::vector<double> values)
    : n_theta_(n_theta), n_p_(n_p), p_min_(p_min), dp_(dp), values_(std::move(values)) {
  require(n_theta > 0 && n_p > 0, "grid needs at least one cell per axis");
  require(dp > 0 && std::isfinite(dp) && std::isfinite(p_min), "grid spacing must be positive and finite");
  require(values_.size() == n_theta * n_p, "grid value count does not match its shape");
  for (const double v : values_) require(v >= 0 && std::isfinite(v), "grid densities must be finite and >= 0");
  cumsum_.assign(n_theta * (n_p + 1), 0.0);
  for (std::size_t i = 0; i < n_theta; ++i) {
    double* c = &cumsum_[i * (n_p + 1)];
    for (std::size_t j = 0; j < n_p; ++j) c[j + 1] = c[j] + values_[i * n_p + j] * dp;
  }
}

double GridDensity::dtheta() const noexcept { return kTwoPi / static_cast<double>(n_theta_); }

double GridDensity::density(double theta, double p) const noexcept {
  const double u = (p - p_min_) / dp_;
  if (!(u >= 0) || u >= static_cast<double>(n_p_)) return 0.0;
  const auto i = std::min(static_cast<std::size_t>(wrap_angle(theta) / dtheta()), n_theta_ - 1);
  return values_[i * n_p_ + static_cast<std::size_t>(u)];
}

double GridDensity::cumulative(std::size_t i, double p) const noexcept {
  const double* c = &cumsum_[i * (n_p_ + 1)];
  const double u = (p - p_min_) / dp_;
  if (u <= 0) return 0.0;
  if (u >= static_cast<double>(n_p_)) return c[n_p_];
  const auto j = static_cast<std::size_t>(u);
  return c[j] + (u - static_cast<double>(j)) * dp_ * values_[i * n_p_ + j];
}

double GridDensity::row_integral(std::size_t i, double lo, double hi) const noexcept {
  return cumulative(i, hi) - cumulative(i, lo);
}

double GridDensity::mass() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < n_theta_; ++i) m += cumsum_[i * (n_p_ + 1) + n_p_];
  return m * dtheta();
}

LineMeasure::LineMeasure(Variant v) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          require(x.density > 0 && std::isfinite(x.density), "uniform density must be positive and finite");
        } else if constexpr (std::is_same_v<T, ParallelFamily>) {
          require(std::isfinite(x.theta), "family direction must be finite");
          require(x.t_min >= 0 && std::isfinite(x.t_min) && x.t_max > x.t_min,
                  "family support must be [t_min, t_max] with 0 <= t_min < t_max");
          require(x.weight >= 0 && std::isfinite(x.weight), "family weight must be finite and >= 0");
        } else if constexpr (std::is_same_v<T, Truncated>) {
          require(x.inner != nullptr, "truncation needs an inner measure");
          require(x.p_max > 0, "truncation bound must be positive");
        } else if constexpr (std::is_same_v<T, Mixture>) {
          for (const auto& part : x.parts) {
            require(part.first >= 0 && std::isfinite(part.first), "mixture weights must be finite and >= 0");
          }
        }
      },
      v);
  v_ = std::make_shared<const Variant>(std::move(v));
}

double Atom::mass() const noexcept {
  switch (kind) {
    case Kind::Uniform:
      return scale * density * kTwoPi * 2.0 * p_max;
    case Kind::Parallel:
      return scale * family.weight * (family.t_max - family.t_min);
    case Kind::Grid: {
      if (-p_max <= grid->p_min() && grid->p_max() <= p_max) return scale * grid->mass();
      double m = 0.0;
      for (std::size_t i = 0; i < grid->n_theta(); ++i) m += grid->row_integral(i, -p_max, p_max);
      return scale * m * grid->dtheta();
    }
  }
  return 0.0;
}

double Atom::density_at(double theta, double p) const noexcept {
  if (std::abs(p) > p_max) return 0.0;
  switch (kind) {
    case Kind::Uniform:
      return scale * density;
    case Kind::Grid:
      return scale * grid->density(theta, p);
    case Kind::Parallel:
      return 0.0;
  }
  return 0.0;
}

std::vector<Atom> flatten(const LineMeasure& mu) {
  std::vector<Atom> out;
  flatten_into(mu, 1.0, kInf, out);
  return out;
}

double total_mass(const LineMeasure& mu) {
  double m = 0.0;
  for (const auto& a : flatten(mu)) m += a.mass();
  return m;
}

LineMeasure truncate(const LineMeasure& mu, double p_max) {
  require(p_max > 0, "truncation bound must be positive");
  return LineMeasure(Truncated{std::make_shared<const LineMeasure>(mu), p_max});
}

LineMeasure scaled(const LineMeasure& mu, double factor) {
  return LineMeasure(Mixture{{{factor, mu}}});
}

std::pair<LineMeasure, double> normalize(const LineMeasure& mu) {
  const double m = total_mass(mu);
  if (!std::isfinite(m)) fail(ErrorKind::InvalidArgument, "measure has infinite mass; truncate it first");
  if (!(m > 0)) fail(ErrorKind::ZeroMass, "measure has zero mass");
  return {scaled(mu, 1.0 / m), m};
}

LineMeasure make_mu_ext() {
  Mixture m;
  for (int k = 0; k < 3; ++k) {
    m.parts.emplace_back(1.0, LineMeasure(ParallelFamily{kTwoPi * k / 3.0, 0.0, kInf, 1.0}));
  }
  return LineMeasure(std::move(m));
}

LineMeasure uniform_with_mass(double mass, double p_max) {
  require(mass > 0 && std::isfinite(mass), "mass must be positive and finite");
  require(p_max > 0 && std::isfinite(p_max), "truncation bound must be positive and finite");
  return truncate(LineMeasure(Uniform{mass / (kTwoPi * 2.0 * p_max)}), p_max);
}

LineMeasure mix(const LineMeasure& mu_eps, double eps, const LineMeasure& lambda0) {
  require(eps > 0 && eps < 1, "mixing parameter must lie in (0, 1)");
  return LineMeasure(Mixture{{{1.0 - eps, mu_eps}, {eps, lambda0}}});
}

double bump(double u) noexcept { return raw_bump(u) / kernel_table().norm; }

double bump_cdf(double u) noexcept {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const auto& t = kernel_table();
  return t.partial(u).first / t.norm;
}

double bump_cdf_integral(double u) noexcept {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return u;
  // int_{-1}^{u} Phi = u Phi(u) - int_{-1}^{u} s h(s) ds.
  const auto& t = kernel_table();
  const auto [c, f] = t.partial(u);
  return (u * c - f) / t.norm;
}

LineMeasure convolve(const LineMeasure& mu0, double eps, const ConvolutionOptions& options) {
  require(eps > 0 && eps < std::numbers::pi, "kernel half-width must lie in (0, pi)");
  require(options.cells_per_eps >= 1, "need at least one cell per kernel half-width");

  // Segment sources: density weight * delta(theta - theta_s) on p in [p0, p1].
  struct Source {
    double theta, p0, p1, weight;
    bool all_theta;  // uniform in theta instead of a point source
  };
  std::vector<Source> sources;
  double extent = 0.0;
  double expected = 0.0;
  for (const auto& a : flatten(mu0)) {
    switch (a.kind) {
      case Atom::Kind::Grid:
        fail(ErrorKind::UnsupportedClosedForm, "convolution of a grid density is not supported");
      case Atom::Kind::Uniform:
        if (!std::isfinite(a.p_max)) fail(ErrorKind::InvalidArgument, "convolution needs a truncated measure");
        sources.push_back({0.0, -a.p_max, a.p_max, a.scale * a.density, true});
        extent = std::max(extent, a.p_max);
        break;
      case Atom::Kind::Parallel: {
        const auto& f = a.family;
        if (!std::isfinite(f.t_max)) fail(ErrorKind::InvalidArgument, "convolution needs a truncated measure");
        const double half = 0.5 * a.scale * f.weight;
        sources.push_back({wrap_angle(f.theta), f.t_min, f.t_max, half, false});
        sources.push_back({wrap_angle(f.theta + std::numbers::pi), -f.t_max, -f.t_min, half, false});
        extent = std::max(extent, f.t_max);
        break;
      }
    }
    expected += a.mass();
  }
  if (!(expected > 0)) fail(ErrorKind::ZeroMass, "cannot convolve a zero measure");

  const double cell = eps / options.cells_per_eps;
  auto n_theta = static_cast<std::size_t>(std::ceil(kTwoPi / cell));
  n_theta += n_theta % 2;
  const double half_width = extent + eps;
  const auto n_p = static_cast<std::size_t>(2 * std::ceil(half_width / cell));
  const double dp = 2.0 * half_width / static_cast<double>(n_p);
  const double dtheta = kTwoPi / static_cast<double>(n_theta);
  const double p_min = -half_width;

  auto phi = [eps](double t) { return bump_cdf(t / eps); };
  auto psi = [eps](double t) { return eps * bump_cdf_integral(t / eps); };

  std::vector<double> mass(n_theta * n_p, 0.0);
  std::vector<double> h_p(n_p);
  for (const auto& s : sources) {
    for (std::size_t j = 0; j < n_p; ++j) {
      const double pa = p_min + dp * static_cast<double>(j);
      const double pb = pa + dp;
      h_p[j] = (psi(pb - s.p0) - psi(pa - s.p0)) - (psi(pb - s.p1) - psi(pa - s.p1));
    }
    for (std::size_t i = 0; i < n_theta; ++i) {
      double h_theta = dtheta;
      if (!s.all_theta) {
        const double ta = dtheta * static_cast<double>(i);
        const double tb = ta + dtheta;
        h_theta = 0.0;
        for (const double shift : {-kTwoPi, 0.0, kTwoPi}) {
          h_theta += phi(tb - s.theta + shift) - phi(ta - s.theta + shift);
        }
        if (h_theta == 0.0) continue;
      }
      double* row = &mass[i * n_p];
      for (std::size_t j = 0; j < n_p; ++j) row[j] += s.weight * h_theta * h_p[j];
    }
  }

  // Reversal symmetry: cell (i, j) <-> (i + n_theta/2, n_p - 1 - j).
  const std::size_t half = n_theta / 2;
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < n_p; ++j) {
      double& a = mass[i * n_p + j];
      double& b = mass[(i + half) * n_p + (n_p - 1 - j)];
      a = b = 0.5 * (a + b);
    }
  }

  double grid_mass = 0.0;
  for (const double m : mass) grid_mass += m;
  if (std::abs(grid_mass - expected) > options.mass_tolerance * expected) {
    fail(ErrorKind::GridTooCoarse, "convolved grid lost mass beyond tolerance");
  }
  const double inv_cell = 1.0 / (dtheta * dp);
  for (double& m : mass) m = std::max(0.0, m * inv_cell);
  return LineMeasure(GridDensity(n_theta, n_p, p_min, dp, std::move(mass)));
}

LineMeasure smoothed_mu_ext(double eps, double t, int cells_per_eps) {
  const LineMeasure mu0 = truncate(make_mu_ext(), t);
  ConvolutionOptions options;
  options.cells_per_eps = cells_per_eps;
  return mix(convolve(mu0, eps, options), eps, uniform_with_mass(total_mass(mu0), t));
}

}  // namespace finsler::ig
