#include "mtlab/families.hpp"

#include <cmath>
#include <stdexcept>

namespace mtlab {

RadialProfile moser(int N, int k) {
  if (k < 1) throw std::invalid_argument("moser index k must be >= 1");
  const double omega = sphere_measure(N);
  const double om_inv_n = std::pow(omega, -1.0 / N);
  const double t_edge = std::pow(static_cast<double>(k), N);  // log(k/r0)
  std::vector<RadialSegment> segs;
  segs.push_back(RadialSegment::plateau(k, t_edge, std::pow(k, N - 1) * om_inv_n));
  segs.push_back(RadialSegment::log_linear(k, 0.0, t_edge, om_inv_n / k));
  return RadialProfile::from_segments(std::move(segs), k);
}

RadialProfile scaled_moser(int N, int k, double C) {
  if (C <= 0) throw std::invalid_argument("C must be positive");
  double nfact = 1.0;
  for (int i = 2; i <= N; ++i) nfact *= i;
  const double s = std::pow(nfact / (std::pow(N, N + 1) * C), 1.0 / N);
  return moser(N, k).rescaled(s);
}

RadialProfile capped_moser_from_log(int N, double log_inv_R) {
  if (log_inv_R < std::log(2.0))
    throw std::invalid_argument("capped moser needs R <= 1/2");
  const double omega = sphere_measure(N);
  const double om_inv_n = std::pow(omega, -1.0 / N);
  const double plateau = std::pow(log_inv_R, (N - 1.0) / N) * om_inv_n;
  std::vector<RadialSegment> segs;
  segs.push_back(RadialSegment::plateau(0.5, log_inv_R, plateau));
  segs.push_back(RadialSegment::log_linear(
      0.5, 0.0, log_inv_R, om_inv_n / std::pow(log_inv_R, 1.0 / N)));
  return RadialProfile::from_segments(std::move(segs), 0.5);
}

RadialProfile capped_moser(int N, double R) {
  if (R <= 0.0 || R > 0.5) throw std::invalid_argument("need 0 < R <= 1/2");
  return capped_moser_from_log(N, std::log(1.0 / R));
}

GridFunction strip_eigenfunction(int k, double L, int nx, int ny,
                                 int min_cells_across) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (L < k) throw std::invalid_argument("strip truncation must cover Omega_k");
  GridFunction u = GridFunction::zeros(DomainSpec::strip(L), nx, ny);
  int across = 0;
  for (int i = 0; i < nx; ++i)
    if (std::abs(u.grid.cx(i)) <= k) ++across;
  if (across < min_cells_across)
    throw std::invalid_argument("grid-too-coarse: fewer than required cells across Omega_k");
  for (int j = 0; j < ny; ++j) {
    const double c2 = std::cos(0.5 * kPi * u.grid.cy(j));
    for (int i = 0; i < nx; ++i) {
      const double x1 = u.grid.cx(i);
      if (std::abs(x1) <= k) u.at(i, j) = std::cos(0.5 * kPi * x1 / k) * c2;
    }
  }
  return u;
}

double jensen_lower_bound(double k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return 4.0 * k * std::expm1(4.0 * k / (kPi * (k * k + 1.0)));
}

GridFunction vanishing_family_member(const GridFunction& base, double k) {
  const int shift = static_cast<int>(std::lround(k / base.grid.hx()));
  GridFunction out = base;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (int j = 0; j < base.grid.ny; ++j)
    for (int i = 0; i < base.grid.nx; ++i) {
      const double v = base.at(i, j);
      if (v == 0.0) continue;
      const int ii = i + shift;
      if (ii < 0 || ii >= base.grid.nx)
        throw std::invalid_argument("support-exits-truncation");
      out.at(ii, j) = v;
    }
  return out;
}

double MobiusBump::value(double y1, double y2) const {
  const Point pre = mobius_apply(MobiusMap::axis(-center), Point{y1, y2});
  return base.value(std::sqrt(pre[0] * pre[0] + pre[1] * pre[1]));
}

BallImage MobiusBump::support_ball() const {
  return mobius_ball_image(MobiusMap::axis(center), base.support_radius());
}

std::vector<MobiusBump> mobius_bump_family(const RadialProfile& base,
                                           const std::vector<double>& centers) {
  if (base.support_radius() > 0.5)
    throw std::invalid_argument("bump must be supported in B_{1/2}");
  std::vector<MobiusBump> family;
  family.reserve(centers.size());
  for (double c : centers) family.push_back(MobiusBump{c, base});
  return family;
}

GridFunction realize(const RadialProfile& profile, const DomainSpec& domain,
                     int nx, int ny) {
  GridFunction u = GridFunction::zeros(domain, nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = u.grid.cx(i), y = u.grid.cy(j);
      u.at(i, j) = profile.value(std::hypot(x, y));
    }
  return u;
}

double bump_beta(double t) {
  t = std::abs(t);
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double s = 2.0 * (t - 0.5);  // in (0,1)
  const double smooth = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  return 1.0 - smooth;
}

GridFunction smooth_bump(const DomainSpec& domain, int nx, int ny,
                         double center_x, double center_y, double radius,
                         double amplitude) {
  GridFunction u = GridFunction::zeros(domain, nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double d =
          std::hypot(u.grid.cx(i) - center_x, u.grid.cy(j) - center_y);
      u.at(i, j) = amplitude * bump_beta(d / radius);
    }
  return u;
}

}  // namespace mtlab
