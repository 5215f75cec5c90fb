#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mtlab/conformal.hpp"
#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"

using namespace mtlab;

namespace {

Point random_in_ball(std::mt19937_64& rng, double rmax = 0.97) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (;;) {
    Point p{dist(rng), dist(rng)};
    if (p[0] * p[0] + p[1] * p[1] < rmax * rmax) return p;
  }
}

// central-difference Jacobian of a 2D map
std::array<double, 4> fd_jacobian(const std::function<Point(Point)>& f, const Point& x,
                                  double h = 1e-6) {
  Point xp = x, xm = x;
  xp[0] += h; xm[0] -= h;
  const Point fx_p = f(xp), fx_m = f(xm);
  xp = x; xm = x;
  xp[1] += h; xm[1] -= h;
  const Point fy_p = f(xp), fy_m = f(xm);
  return {(fx_p[0] - fx_m[0]) / (2 * h), (fy_p[0] - fy_m[0]) / (2 * h),
          (fx_p[1] - fx_m[1]) / (2 * h), (fy_p[1] - fy_m[1]) / (2 * h)};
}

}  // namespace

TEST_CASE("mobius pinned values and the complex oracle") {
  MobiusMap phi(Point{0.5, 0.0});
  const Point at_zero = mobius_apply(phi, Point{0.0, 0.0});
  CHECK(at_zero[0] == 0.5);
  CHECK(at_zero[1] == 0.0);

  MobiusMap id(Point{0.0, 0.0});
  const Point same = mobius_apply(id, Point{0.3, -0.4});
  CHECK(same[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(same[1] == doctest::Approx(-0.4).epsilon(1e-15));

  const Point img = mobius_apply(phi, Point{0.0, 0.5});
  CHECK(img[0] == doctest::Approx(10.0 / 17.0).epsilon(1e-12));
  CHECK(img[1] == doctest::Approx(6.0 / 17.0).epsilon(1e-12));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Point a = random_in_ball(rng, 0.9);
    const Point x = random_in_ball(rng);
    const std::complex<double> za(a[0], a[1]), zx(x[0], x[1]);
    const std::complex<double> oracle = (zx + za) / (1.0 + std::conj(za) * zx);
    const Point got = mobius_apply(MobiusMap(a), x);
    CHECK(got[0] == doctest::Approx(oracle.real()).epsilon(1e-13));
    CHECK(got[1] == doctest::Approx(oracle.imag()).epsilon(1e-13));
  }
}

TEST_CASE("mobius inverse composition and ball preservation") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Point a = random_in_ball(rng, 0.9);
    MobiusMap phi(a);
    MobiusMap inv(Point{-a[0], -a[1]});
    const Point x = random_in_ball(rng);
    const Point back = mobius_apply(inv, mobius_apply(phi, x));
    CHECK(std::hypot(back[0] - x[0], back[1] - x[1]) < 1e-10);
    const Point y = mobius_apply(phi, x);
    CHECK(y[0] * y[0] + y[1] * y[1] < 1.0);
  }
}

TEST_CASE("mobius singular point is rejected") {
  MobiusMap phi(Point{0.5, 0.0});
  CHECK_THROWS_AS(mobius_apply(phi, Point{-2.0, 0.0}), std::domain_error);
}

TEST_CASE("mobius is conformal and a hyperbolic isometry (finite differences)") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Point a = random_in_ball(rng, 0.8);
    MobiusMap phi(a);
    auto f = [&](Point p) { return mobius_apply(phi, p); };
    for (int pt = 0; pt < 10; ++pt) {
      const Point x = random_in_ball(rng, 0.9);
      const auto J = fd_jacobian(f, x);
      const double col0 = J[0] * J[0] + J[2] * J[2];
      const double col1 = J[1] * J[1] + J[3] * J[3];
      const double cross = J[0] * J[1] + J[2] * J[3];
      CHECK(std::abs(col0 - col1) <= 1e-6 * std::max(1.0, col0));
      CHECK(std::abs(cross) <= 1e-6 * std::max(1.0, col0));
      // pullback of the hyperbolic density equals the density
      const Point y = f(x);
      const double lhs = hyperbolic_density(y) * col0;
      CHECK(lhs == doctest::Approx(hyperbolic_density(x)).epsilon(1e-6));
    }
  }
}

TEST_CASE("mobius ball image closed form") {
  const auto id = mobius_ball_image(MobiusMap(Point{0.0, 0.0}), 0.3);
  CHECK(id.center[0] == 0.0);
  CHECK(id.radius == doctest::Approx(0.3).epsilon(1e-15));

  const auto img = mobius_ball_image(MobiusMap(Point{0.5, 0.0}), 0.5);
  CHECK(img.center[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(img.radius == doctest::Approx(0.4).epsilon(1e-14));

  std::mt19937_64 rng(31);
  MobiusMap phi(Point{0.35, -0.41});
  const auto ball = mobius_ball_image(phi, 0.6);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int s = 0; s < 500; ++s) {
    const double th = angle(rng);
    const Point y = mobius_apply(phi, Point{0.6 * std::cos(th), 0.6 * std::sin(th)});
    const double d = std::hypot(y[0] - ball.center[0], y[1] - ball.center[1]);
    CHECK(std::abs(d - ball.radius) < 1e-10);
  }
}

TEST_CASE("hyperbolic density pinned values") {
  CHECK(hyperbolic_density(Point{0.0, 0.0}) == 4.0);
  CHECK(hyperbolic_density(Point{0.5, 0.0}) == doctest::Approx(64.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(hyperbolic_density(Point{1.0, 0.0}), std::domain_error);
}

TEST_CASE("disc-strip map pinned behavior") {
  const auto origin = disc_strip(0.0, 0.0);
  CHECK(origin[0] == 0.0);
  CHECK(origin[1] == 0.0);
  // the segment toward (1,0) runs to x1 = -infinity on the axis
  double prev = 0.0;
  for (double t : {0.9, 0.99, 0.999, 0.9999}) {
    const auto x = disc_strip(t, 0.0);
    CHECK(x[1] == 0.0);
    CHECK(x[0] < prev);
    prev = x[0];
  }
  CHECK(prev < -5.0);
  CHECK_THROWS_AS(disc_strip(1.0, 0.1), std::domain_error);

  std::mt19937_64 rng(37);
  for (int s = 0; s < 100; ++s) {
    const Point y = random_in_ball(rng, 0.995);
    const auto x = disc_strip(y[0], y[1]);
    CHECK(std::abs(x[1]) < 1.0);
  }
}

TEST_CASE("disc-strip map is conformal; jacobian matches finite differences") {
  CHECK(disc_strip_jacobian(0.0, 0.0) == doctest::Approx(16.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(disc_strip_jacobian(0.0, 0.5) ==
        doctest::Approx(16.0 / (kPi * kPi * 1.5625)).epsilon(1e-15));

  std::mt19937_64 rng(41);
  auto f = [](Point p) {
    const auto x = disc_strip(p[0], p[1]);
    return Point{x[0], x[1]};
  };
  for (int s = 0; s < 200; ++s) {
    const Point y = random_in_ball(rng, 0.9);
    const auto J = fd_jacobian(f, y);
    const double col0 = J[0] * J[0] + J[2] * J[2];
    const double col1 = J[1] * J[1] + J[3] * J[3];
    const double cross = J[0] * J[1] + J[2] * J[3];
    CHECK(std::abs(col0 - col1) <= 1e-6 * std::max(1.0, col0));
    CHECK(std::abs(cross) <= 1e-6 * std::max(1.0, col0));
    const double det = std::abs(J[0] * J[3] - J[1] * J[2]);
    CHECK(det == doctest::Approx(disc_strip_jacobian(y[0], y[1])).epsilon(1e-6));
  }
}

TEST_CASE("strip-disc inverse round trip") {
  std::mt19937_64 rng(43);
  for (int s = 0; s < 100; ++s) {
    const Point y = random_in_ball(rng, 0.95);
    const auto x = disc_strip(y[0], y[1]);
    const auto back = strip_disc(x[0], x[1]);
    CHECK(back[0] == doctest::Approx(y[0]).epsilon(1e-11));
    CHECK(back[1] == doctest::Approx(y[1]).epsilon(1e-11));
  }
  const auto x = strip_disc(-3.0, 0.5);
  const auto fwd = disc_strip(x[0], x[1]);
  CHECK(fwd[0] == doctest::Approx(-3.0).epsilon(1e-11));
  CHECK(fwd[1] == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("jacobian density is subharmonic with strict circle means") {
  std::mt19937_64 rng(47);
  const double h = 1e-4;
  for (int s = 0; s < 50; ++s) {
    const Point y = random_in_ball(rng, 0.9);
    const double lap =
        (disc_strip_jacobian(y[0] + h, y[1]) + disc_strip_jacobian(y[0] - h, y[1]) +
         disc_strip_jacobian(y[0], y[1] + h) + disc_strip_jacobian(y[0], y[1] - h) -
         4.0 * disc_strip_jacobian(y[0], y[1])) /
        (h * h);
    CHECK(lap > 0.0);
  }
  const double at0 = disc_strip_jacobian(0.0, 0.0);
  for (double rho : {0.3, 0.6, 0.9}) {
    double mean = 0.0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
      const double th = 2.0 * kPi * (i + 0.5) / n;
      mean += disc_strip_jacobian(rho * std::cos(th), rho * std::sin(th));
    }
    mean /= n;
    CHECK(mean > at0 * (1.0 + 1e-6));
  }
}

TEST_CASE("transport preserves energy and the functional within grid error") {
  GridFunction u = smooth_bump(DomainSpec::strip(4), 512, 256, 0.0, 0.0, 0.8, 0.55);
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  const double e_strip = dirichlet_energy(u, 2);
  const double mt_strip = mt_functional(u, s2);

  GridFunction v = transport_strip_to_disc(u, 512);
  const double e_disc = dirichlet_energy(v, 2);
  double mt_disc = 0.0;
  for (int j = 0; j < v.grid.ny; ++j)
    for (int i = 0; i < v.grid.nx; ++i) {
      const double val = v.at(i, j);
      if (val == 0.0) continue;
      mt_disc += phi_eval(s2, val) * disc_strip_jacobian(v.grid.cx(i), v.grid.cy(j)) *
                 v.grid.cell_measure();
    }
  CHECK(e_disc == doctest::Approx(e_strip).epsilon(0.01));
  CHECK(mt_disc == doctest::Approx(mt_strip).epsilon(0.02));

  // round trip back to the strip
  GridFunction w = transport_disc_to_strip(v, 4.0, 512, 256);
  CHECK(dirichlet_energy(w, 2) == doctest::Approx(e_strip).epsilon(0.02));
  CHECK(mt_functional(w, s2) == doctest::Approx(mt_strip).epsilon(0.02));

  GridFunction z = GridFunction::zeros(DomainSpec::strip(4), 64, 32);
  GridFunction zt = transport_strip_to_disc(z, 64);
  CHECK(mt_functional(zt, s2) == 0.0);
}
