#pragma once

#include <array>
#include <vector>

#include "mtlab/geometry.hpp"

namespace mtlab {

using Point = std::vector<double>;

/// Mobius self-map of the unit ball with phi_a(0) = a; a hyperbolic isometry.
struct MobiusMap {
  Point a;

  explicit MobiusMap(Point a_);
  static MobiusMap axis(double offset, int dim = 2);  // a = offset * e_1
};

/// phi_a(x) = ((1-|a|^2)x + (|x|^2 + 2<a,x> + 1)a) / (|a|^2|x|^2 + 2<a,x> + 1).
/// Throws when the denominator is within 1e-14 of zero (the excluded point
/// -a/|a|^2 lies outside the closed ball, so interior use never trips this).
Point mobius_apply(const MobiusMap& map, const Point& x);

struct BallImage {
  Point center;
  double radius;
};

/// Closed-form image of B_R(0): radius R(1-|a|^2)/(1-R^2|a|^2), center
/// (1-R^2)/(1-R^2|a|^2) * a.
BallImage mobius_ball_image(const MobiusMap& map, double R);

/// Hyperbolic conformal density 4/(1-|x|^2)^2 on the open unit ball.
double hyperbolic_density(const Point& x);
double hyperbolic_density_2d(double x1, double x2);

/// Conformal diffeomorphism disc -> strip R x (-1,1):
///   x1 = (1/pi) log(((y1-1)^2 + y2^2)/((y1+1)^2 + y2^2))
///   x2 = (2/pi) atan2(2 y2, 1 - y1^2 - y2^2)
/// The second component uses 2*y2 (not the printed 2*y1, which would collapse
/// the segment y1 = 0); this is the reading consistent with the closed-form
/// Jacobian below and with (2/pi) log((1+z)/(1-z)) up to reflection.
std::array<double, 2> disc_strip(double y1, double y2);

/// Inverse map strip -> disc.
std::array<double, 2> strip_disc(double x1, double x2);

/// |det d psi| = 16/pi^2 * 1/(((y1+1)^2 + y2^2)((y1-1)^2 + y2^2)); unbounded
/// only around (+-1, 0).
double disc_strip_jacobian(double y1, double y2);

/// Compose a strip function with the disc->strip map onto an n x n disc grid.
GridFunction transport_strip_to_disc(const GridFunction& u, int n);

/// Compose a disc function with the strip->disc map onto a strip grid.
GridFunction transport_disc_to_strip(const GridFunction& v, double truncation,
                                     int nx, int ny);

}  // namespace mtlab
