#include "mtlab/conformal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mtlab {

namespace {
double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace

MobiusMap::MobiusMap(Point a_) : a(std::move(a_)) {
  if (a.size() < 2) throw std::invalid_argument("Mobius center needs dim >= 2");
  if (dot(a, a) >= 1.0) throw std::invalid_argument("Mobius center must satisfy |a| < 1");
}

MobiusMap MobiusMap::axis(double offset, int dim) {
  Point a(static_cast<std::size_t>(dim), 0.0);
  a[0] = offset;
  return MobiusMap(std::move(a));
}

Point mobius_apply(const MobiusMap& map, const Point& x) {
  if (x.size() != map.a.size())
    throw std::invalid_argument("point/center dimension mismatch");
  const double a2 = dot(map.a, map.a);
  const double x2 = dot(x, x);
  const double ax = dot(map.a, x);
  const double denom = a2 * x2 + 2.0 * ax + 1.0;
  if (std::abs(denom) < 1e-14) throw std::domain_error("singular-point of Mobius map");
  const double cx = (1.0 - a2) / denom;
  const double ca = (x2 + 2.0 * ax + 1.0) / denom;
  Point y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = cx * x[i] + ca * map.a[i];
  return y;
}

BallImage mobius_ball_image(const MobiusMap& map, double R) {
  if (R <= 0.0 || R >= 1.0) throw std::invalid_argument("need 0 < R < 1");
  const double a2 = dot(map.a, map.a);
  const double denom = 1.0 - R * R * a2;
  BallImage img;
  img.radius = R * (1.0 - a2) / denom;
  img.center.resize(map.a.size());
  const double c = (1.0 - R * R) / denom;
  for (std::size_t i = 0; i < map.a.size(); ++i) img.center[i] = c * map.a[i];
  return img;
}

double hyperbolic_density(const Point& x) {
  const double r2 = dot(x, x);
  if (r2 >= 1.0) throw std::domain_error("outside-domain: |x| >= 1");
  const double d = 1.0 - r2;
  return 4.0 / (d * d);
}

double hyperbolic_density_2d(double x1, double x2) {
  return hyperbolic_density(Point{x1, x2});
}

std::array<double, 2> disc_strip(double y1, double y2) {
  const double r2 = y1 * y1 + y2 * y2;
  if (r2 >= 1.0) throw std::domain_error("outside-domain: |y| >= 1");
  const double num = (y1 - 1.0) * (y1 - 1.0) + y2 * y2;
  const double den = (y1 + 1.0) * (y1 + 1.0) + y2 * y2;
  const double x1 = std::log(num / den) / kPi;
  const double x2 = 2.0 / kPi * std::atan2(2.0 * y2, 1.0 - r2);
  return {x1, x2};
}

std::array<double, 2> strip_disc(double x1, double x2) {
  if (std::abs(x2) >= 1.0) throw std::domain_error("outside-domain: |x2| >= 1");
  // disc_strip gives x1 = -Re W, x2 = Im W for W = (2/pi) log((1+z)/(1-z)),
  // so z = (E-1)/(E+1) with E = exp(pi(-x1 + i x2)/2).
  const std::complex<double> w(-x1, x2);
  const std::complex<double> e = std::exp(0.5 * kPi * w);
  const std::complex<double> z = (e - 1.0) / (e + 1.0);
  return {z.real(), z.imag()};
}

double disc_strip_jacobian(double y1, double y2) {
  const double r2 = y1 * y1 + y2 * y2;
  if (r2 >= 1.0) throw std::domain_error("outside-domain: |y| >= 1");
  const double a = (y1 + 1.0) * (y1 + 1.0) + y2 * y2;
  const double b = (y1 - 1.0) * (y1 - 1.0) + y2 * y2;
  return 16.0 / (kPi * kPi) / (a * b);
}

GridFunction transport_strip_to_disc(const GridFunction& u, int n) {
  GridFunction v = GridFunction::zeros(DomainSpec::disc(), n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double y1 = v.grid.cx(i), y2 = v.grid.cy(j);
      if (y1 * y1 + y2 * y2 >= 1.0) continue;
      const auto x = disc_strip(y1, y2);
      v.at(i, j) = u.sample(x[0], x[1]);
    }
  return v;
}

GridFunction transport_disc_to_strip(const GridFunction& v, double truncation,
                                     int nx, int ny) {
  GridFunction u = GridFunction::zeros(DomainSpec::strip(truncation), nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto y = strip_disc(u.grid.cx(i), u.grid.cy(j));
      u.at(i, j) = v.sample(y[0], y[1]);
    }
  return u;
}

}  // namespace mtlab
