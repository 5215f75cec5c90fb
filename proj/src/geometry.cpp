#include "mtlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtlab/quadrature.hpp"

namespace mtlab {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Lanczos (g = 7, 9 terms) for general arguments.
double lanczos_gamma(double x) {
  static const double c[9] = {0.99999999999980993,     676.5203681218851,
                              -1259.1392167224028,     771.32342877765313,
                              -176.61502916214059,     12.507343278686905,
                              -0.13857109526572012,    9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
  const double two_x = 2.0 * x;
  const double rounded = std::round(two_x);
  if (std::abs(two_x - rounded) < 1e-13 && rounded > 0 && rounded < 350) {
    const long n2 = static_cast<long>(rounded);
    if (n2 % 2 == 0) return factorial(static_cast<int>(n2 / 2) - 1);
    // Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi)
    double r = kSqrtPi;
    for (long m = 1; 2 * m + 1 <= n2; ++m) r *= (m - 0.5);
    return r;
  }
  return lanczos_gamma(x);
}

double sphere_measure(int N) {
  if (N < 2) throw std::invalid_argument("invalid-dimension: N must be >= 2");
  return N * std::pow(kPi, 0.5 * N) / gamma_fn(0.5 * N + 1.0);
}

double sharp_exponent(int N) {
  if (N < 2) throw std::invalid_argument("invalid-dimension: N must be >= 2");
  return N * std::pow(sphere_measure(N), 1.0 / (N - 1));
}

DimensionalConstants DimensionalConstants::make(int N) {
  return {N, sphere_measure(N), sharp_exponent(N)};
}

double DomainSpec::inradius() const {
  switch (kind) {
    case DomainKind::Ball: return radius;
    case DomainKind::Strip: return 1.0;
    case DomainKind::Rectangle: return std::min(half_length, 1.0);
    case DomainKind::Disc: return 1.0;
  }
  return 0.0;
}

DomainSpec DomainSpec::ball(double radius) {
  if (radius <= 0) throw std::invalid_argument("ball radius must be positive");
  DomainSpec d;
  d.kind = DomainKind::Ball;
  d.radius = radius;
  return d;
}

DomainSpec DomainSpec::strip(double truncation) {
  if (truncation <= 0) throw std::invalid_argument("strip truncation must be positive");
  DomainSpec d;
  d.kind = DomainKind::Strip;
  d.truncation = truncation;
  return d;
}

DomainSpec DomainSpec::rectangle(double half_length) {
  if (half_length <= 0) throw std::invalid_argument("rectangle half-length must be positive");
  DomainSpec d;
  d.kind = DomainKind::Rectangle;
  d.half_length = half_length;
  return d;
}

DomainSpec DomainSpec::disc() {
  DomainSpec d;
  d.kind = DomainKind::Disc;
  d.radius = 1.0;
  return d;
}

// ---------------------------------------------------------------------------
// RadialProfile
// ---------------------------------------------------------------------------

RadialSegment RadialSegment::plateau(double scale, double t_lo, double value) {
  RadialSegment s;
  s.kind = Kind::Plateau;
  s.scale = scale;
  s.t_lo = t_lo;
  s.t_hi = std::numeric_limits<double>::infinity();
  s.value = value;
  return s;
}

RadialSegment RadialSegment::log_linear(double scale, double t_lo, double t_hi,
                                        double coeff) {
  RadialSegment s;
  s.kind = Kind::LogLinear;
  s.scale = scale;
  s.t_lo = t_lo;
  s.t_hi = t_hi;
  s.coeff = coeff;
  return s;
}

RadialProfile RadialProfile::from_segments(std::vector<RadialSegment> segments,
                                           double support_radius, bool monotone) {
  RadialProfile p;
  p.rep_ = std::move(segments);
  p.support_ = support_radius;
  p.monotone_ = monotone;
  return p;
}

RadialProfile RadialProfile::from_steps(StepProfile steps) {
  RadialProfile p;
  p.support_ = steps.radii.empty() ? 0.0 : steps.radii.back();
  p.rep_ = std::move(steps);
  p.monotone_ = true;
  return p;
}

RadialProfile RadialProfile::from_samples(SampledProfile samples, bool monotone) {
  if (samples.r.size() != samples.u.size() || samples.r.empty())
    throw std::invalid_argument("sampled profile needs matching nonempty nodes");
  RadialProfile p;
  p.support_ = samples.r.back();
  p.rep_ = std::move(samples);
  p.monotone_ = monotone;
  return p;
}

double RadialProfile::value(double r) const {
  if (r < 0) r = -r;
  if (const auto* segs = std::get_if<std::vector<RadialSegment>>(&rep_)) {
    for (const auto& s : *segs) {
      if (s.kind == RadialSegment::Kind::Plateau) {
        // covers r <= scale*exp(-t_lo)
        if (r <= s.scale * std::exp(-s.t_lo)) return s.value;
      } else {
        if (r <= 0) continue;
        const double t = std::log(s.scale / r);
        if (t >= s.t_lo && t <= s.t_hi) return s.coeff * t;
      }
    }
    return 0.0;
  }
  if (const auto* st = std::get_if<StepProfile>(&rep_)) {
    auto it = std::upper_bound(st->radii.begin(), st->radii.end(), r);
    if (it == st->radii.end()) return 0.0;
    return st->values[static_cast<std::size_t>(it - st->radii.begin())];
  }
  const auto& sp = std::get<SampledProfile>(rep_);
  if (r <= sp.r.front()) return sp.u.front();
  if (r >= sp.r.back()) return r == sp.r.back() ? sp.u.back() : 0.0;
  auto it = std::upper_bound(sp.r.begin(), sp.r.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - sp.r.begin());
  const double w = (r - sp.r[i - 1]) / (sp.r[i] - sp.r[i - 1]);
  return sp.u[i - 1] + w * (sp.u[i] - sp.u[i - 1]);
}

RadialProfile RadialProfile::rescaled(double s) const {
  if (s <= 0) throw std::invalid_argument("rescale factor must be positive");
  RadialProfile p = *this;
  p.support_ = support_ / s;
  if (auto* segs = std::get_if<std::vector<RadialSegment>>(&p.rep_)) {
    for (auto& seg : *segs) seg.scale /= s;
  } else if (auto* st = std::get_if<StepProfile>(&p.rep_)) {
    for (auto& r : st->radii) r /= s;
    st->unit_measure /= std::pow(s, st->dim);
  } else {
    auto& sp = std::get<SampledProfile>(p.rep_);
    for (auto& r : sp.r) r /= s;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Radial integration / distribution
// ---------------------------------------------------------------------------

double radial_integral(const RadialProfile& profile,
                       const std::function<double(double)>& integrand, int N,
                       double abs_tol) {
  if (N < 2) throw std::invalid_argument("invalid-dimension: N must be >= 2");
  const double f0 = integrand(0.0);
  if (f0 != 0.0) return f0 > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
  const double omega = sphere_measure(N);

  if (const auto* segs = std::get_if<std::vector<RadialSegment>>(&profile.rep())) {
    int n_quad = 0;
    for (const auto& s : *segs)
      if (s.kind == RadialSegment::Kind::LogLinear) ++n_quad;
    const double tol_seg = abs_tol / std::max(1, n_quad);
    double total = 0.0;
    for (const auto& s : *segs) {
      if (s.kind == RadialSegment::Kind::Plateau) {
        // omega * f(value) * r0^N / N with r0 = scale*exp(-t_lo)
        const double measure = omega * std::exp(N * (std::log(s.scale) - s.t_lo)) / N;
        total += integrand(s.value) * measure;
      } else {
        const double log_scale = std::log(s.scale);
        const double coeff = s.coeff;
        auto g = [&](double t) {
          return integrand(coeff * t) * std::exp(N * (log_scale - t));
        };
        total += omega * integrate(g, s.t_lo, s.t_hi, tol_seg).value;
      }
    }
    return total;
  }

  if (const auto* st = std::get_if<StepProfile>(&profile.rep())) {
    double total = 0.0;
    for (std::size_t i = 0; i < st->values.size(); ++i)
      total += integrand(st->values[i]) * (st->counts[i] * st->unit_measure);
    return total;
  }

  const auto& sp = std::get<SampledProfile>(profile.rep());
  const double tol_seg = abs_tol / std::max<std::size_t>(1, sp.r.size());
  double total = 0.0;
  if (sp.r.front() > 0) {
    // constant extension inside the first node
    total += omega * integrand(sp.u.front()) * std::pow(sp.r.front(), N) / N;
  }
  for (std::size_t i = 0; i + 1 < sp.r.size(); ++i) {
    const double r0 = sp.r[i], r1 = sp.r[i + 1];
    if (r1 <= r0) continue;
    const double u0 = sp.u[i], u1 = sp.u[i + 1];
    auto g = [&](double rho) {
      const double w = (rho - r0) / (r1 - r0);
      return integrand(u0 + w * (u1 - u0)) * std::pow(rho, N - 1);
    };
    total += omega * integrate(g, r0, r1, tol_seg).value;
  }
  return total;
}

double distribution(const RadialProfile& profile, double t, int N) {
  const double omega = sphere_measure(N);
  if (const auto* segs = std::get_if<std::vector<RadialSegment>>(&profile.rep())) {
    double best_log_r = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& s : *segs) {
      if (s.kind == RadialSegment::Kind::Plateau) {
        if (s.value > t) {
          best_log_r = std::max(best_log_r, std::log(s.scale) - s.t_lo);
          any = true;
        }
      } else if (s.coeff > 0) {
        const double t_cross = t / s.coeff;  // U > t for t-param > t_cross
        if (t_cross < s.t_hi) {
          best_log_r =
              std::max(best_log_r, std::log(s.scale) - std::max(t_cross, s.t_lo));
          any = true;
        }
      }
    }
    if (!any) return 0.0;
    return omega * std::exp(N * best_log_r) / N;
  }
  if (const auto* st = std::get_if<StepProfile>(&profile.rep())) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < st->values.size() && st->values[i] > t; ++i)
      count += st->counts[i];
    return count * st->unit_measure;
  }
  const auto& sp = std::get<SampledProfile>(profile.rep());
  if (!profile.monotone())
    throw std::invalid_argument("distribution of non-monotone sampled profile");
  double r_t = 0.0;
  if (sp.u.front() > t) {
    r_t = sp.r.back();
    for (std::size_t i = 0; i + 1 < sp.r.size(); ++i) {
      if (sp.u[i] > t && sp.u[i + 1] <= t) {
        const double w = (sp.u[i] - t) / (sp.u[i] - sp.u[i + 1]);
        r_t = sp.r[i] + w * (sp.r[i + 1] - sp.r[i]);
        break;
      }
    }
  }
  return omega * std::pow(r_t, N) / N;
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

Grid Grid::over(const DomainSpec& domain, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one cell");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  switch (domain.kind) {
    case DomainKind::Ball:
      g.xlo = -domain.radius; g.xhi = domain.radius;
      g.ylo = -domain.radius; g.yhi = domain.radius;
      break;
    case DomainKind::Disc:
      g.xlo = -1; g.xhi = 1; g.ylo = -1; g.yhi = 1;
      break;
    case DomainKind::Strip:
      g.xlo = -domain.truncation; g.xhi = domain.truncation;
      g.ylo = -1; g.yhi = 1;
      break;
    case DomainKind::Rectangle:
      g.xlo = -domain.half_length; g.xhi = domain.half_length;
      g.ylo = -1; g.yhi = 1;
      break;
  }
  return g;
}

GridFunction GridFunction::zeros(const DomainSpec& domain, int nx, int ny) {
  GridFunction u;
  u.domain = domain;
  u.grid = Grid::over(domain, nx, ny);
  u.values.assign(static_cast<std::size_t>(u.grid.size()), 0.0);
  return u;
}

double GridFunction::sample(double x, double y) const {
  const double gx = (x - grid.xlo) / grid.hx() - 0.5;
  const double gy = (y - grid.ylo) / grid.hy() - 0.5;
  const int i0 = static_cast<int>(std::floor(gx));
  const int j0 = static_cast<int>(std::floor(gy));
  const double fx = gx - i0, fy = gy - j0;
  auto v = [&](int i, int j) -> double {
    if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny) return 0.0;
    return at(i, j);
  };
  return (1 - fx) * (1 - fy) * v(i0, j0) + fx * (1 - fy) * v(i0 + 1, j0) +
         (1 - fx) * fy * v(i0, j0 + 1) + fx * fy * v(i0 + 1, j0 + 1);
}

double grid_integral(const GridFunction& u, const std::function<double(double)>& integrand) {
  const double m = u.grid.cell_measure();
  double total = 0.0;
  for (double v : u.values) total += integrand(v) * m;
  return total;
}

double grid_integral_weighted(const GridFunction& u,
                              const std::function<double(double, double, double)>& f) {
  const double m = u.grid.cell_measure();
  double total = 0.0;
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i)
      total += f(u.grid.cx(i), u.grid.cy(j), u.at(i, j)) * m;
  return total;
}

double distribution(const GridFunction& u, double t) {
  std::int64_t count = 0;
  for (double v : u.values)
    if (v > t) ++count;
  return count * u.grid.cell_measure();
}

GridFunction sample_radial(const RadialProfile& profile, double half, int n) {
  GridFunction u = GridFunction::zeros(DomainSpec::ball(half), n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      u.at(i, j) = profile.value(std::hypot(u.grid.cx(i), u.grid.cy(j)));
  return u;
}

void gradient_at(const GridFunction& u, int i, int j, double& gx, double& gy) {
  const double hx = u.grid.hx(), hy = u.grid.hy();
  if (i == 0)
    gx = (u.at(1, j) - u.at(0, j)) / hx;
  else if (i == u.grid.nx - 1)
    gx = (u.at(i, j) - u.at(i - 1, j)) / hx;
  else
    gx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2 * hx);
  if (j == 0)
    gy = (u.at(i, 1) - u.at(i, 0)) / hy;
  else if (j == u.grid.ny - 1)
    gy = (u.at(i, j) - u.at(i, j - 1)) / hy;
  else
    gy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2 * hy);
}

}  // namespace mtlab
