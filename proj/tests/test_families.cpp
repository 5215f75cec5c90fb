#include <doctest.h>

#include <cmath>

#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/geometry.hpp"
#include "mtlab/quadrature.hpp"

using namespace mtlab;

TEST_CASE("moser profile anatomy") {
  RadialProfile u = moser(2, 3);
  CHECK(u.value(0.0) == doctest::Approx(3.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
  CHECK(u.support_radius() == 3.0);
  CHECK(u.value(3.5) == 0.0);
  // continuous at the plateau edge
  const double edge = 3.0 * std::exp(-9.0);
  CHECK(u.value(edge * 1.0000001) == doctest::Approx(u.value(0.0)).epsilon(1e-6));
  CHECK_THROWS_AS(moser(2, 0), std::invalid_argument);
}

TEST_CASE("scaled moser keeps energy and obeys the L^N budget") {
  // scale factor 1: v = u
  RadialProfile u = moser(2, 2);
  RadialProfile v_id = scaled_moser(2, 2, 2.0 / 8.0);  // C = N!/N^{N+1}
  for (double r : {0.0, 0.01, 0.3, 1.0, 1.9})
    CHECK(v_id.value(r) == doctest::Approx(u.value(r)).epsilon(1e-12));

  for (int k = 1; k <= 4; ++k) {
    RadialProfile v = scaled_moser(2, k, 1.0);
    CHECK(dirichlet_energy(v, 2) == doctest::Approx(1.0).epsilon(1e-12));
    const double mass_u = radial_integral(
        moser(2, k), [](double t) { return t * t; }, 2);
    const double mass_v = radial_integral(
        v, [](double t) { return t * t; }, 2);
    // scaling identity with factor N^{N+1} C / N! = 4 at N=2, C=1
    CHECK(mass_v == doctest::Approx(4.0 * mass_u).epsilon(1e-9));
    CHECK(mass_v <= 1.0 + 1e-9);
  }
}

TEST_CASE("scaled moser functional grows without bound") {
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  double prev = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double value = mt_functional(scaled_moser(2, k, 1.0), s2);
    CHECK(value > prev);
    prev = value;
  }
}

TEST_CASE("subcritical exponent keeps the scaled family bounded") {
  const TruncatedExpSpec sub = TruncatedExpSpec::with_alpha(2, 0.9 * 4.0 * kPi);
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k)
    worst = std::max(worst, mt_functional(scaled_moser(2, k, 1.0), sub));
  CHECK(worst < 1e3);  // bounded, in contrast to the sharp exponent
}

TEST_CASE("capped moser anatomy and normalization") {
  for (int N : {2, 3}) {
    for (double R : {0.05, 0.2, 0.4}) {
      RadialProfile w = capped_moser(N, R);
      const double expected =
          std::pow(std::log(1.0 / R), (N - 1.0) / N) /
          std::pow(sphere_measure(N), 1.0 / N);
      CHECK(w.value(0.0) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(w.support_radius() == 0.5);
      CHECK(dirichlet_energy(w, N) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  // R -> 1/2 limit of the plateau
  RadialProfile w = capped_moser(2, 0.5);
  CHECK(w.value(0.0) ==
        doctest::Approx(std::sqrt(std::log(2.0) / (2.0 * kPi))).epsilon(1e-12));
  CHECK_THROWS_AS(capped_moser(2, 0.6), std::invalid_argument);
}

TEST_CASE("strip eigenfunction peak and coarse-grid guard") {
  GridFunction phi = strip_eigenfunction(2, 2.0, 256, 128);
  CHECK(phi.sample(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(strip_eigenfunction(2, 8.0, 16, 16), std::invalid_argument);
}

TEST_CASE("jensen lower bound values and trend") {
  CHECK(jensen_lower_bound(2) ==
        doctest::Approx(8.0 * std::expm1(8.0 / (5.0 * kPi))).epsilon(1e-14));
  CHECK(jensen_lower_bound(2) > 16.0 / kPi);
  CHECK(jensen_lower_bound(100) > 16.0 / kPi);
  CHECK(jensen_lower_bound(100) == doctest::Approx(5.1241).epsilon(1e-3));
  CHECK(jensen_lower_bound(1) == doctest::Approx(3.560).epsilon(1e-3));
  CHECK(jensen_lower_bound(1) < 16.0 / kPi);
  double prev = jensen_lower_bound(10);
  for (int k = 11; k <= 40; ++k) {
    const double cur = jensen_lower_bound(k);
    CHECK(cur > 16.0 / kPi);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("vanishing family translation") {
  GridFunction base = smooth_bump(DomainSpec::strip(8), 512, 64, 0.0, 0.0, 0.7, 0.8);
  GridFunction same = vanishing_family_member(base, 0.0);
  CHECK(same.values == base.values);

  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  const double mt0 = mt_functional(base, s2);
  for (int k = 1; k <= 5; ++k) {
    GridFunction uk = vanishing_family_member(base, static_cast<double>(k));
    CHECK(mt_functional(uk, s2) == doctest::Approx(mt0).epsilon(1e-13));
    // mass drains out of any fixed ball
    if (k >= 2) {
      double near_origin = 0.0;
      for (int j = 0; j < uk.grid.ny; ++j)
        for (int i = 0; i < uk.grid.nx; ++i)
          if (std::hypot(uk.grid.cx(i), uk.grid.cy(j)) < 0.5)
            near_origin += std::abs(uk.at(i, j));
      CHECK(near_origin == 0.0);
    }
  }
  CHECK_THROWS_AS(vanishing_family_member(base, 100.0), std::invalid_argument);
}

TEST_CASE("mobius bump family transports support and hyperbolic mass") {
  // smooth sampled bump supported in B_{0.45}
  SampledProfile sp;
  for (int i = 0; i <= 200; ++i) {
    const double r = 0.45 * i / 200.0;
    sp.r.push_back(r);
    sp.u.push_back(bump_beta(r / 0.45));
  }
  RadialProfile base = RadialProfile::from_samples(sp, true);
  const std::vector<double> centers = {0.0, 0.3, 0.6, 0.9};
  const auto family = mobius_bump_family(base, centers);

  CHECK(family[0].value(0.2, 0.1) == doctest::Approx(base.value(std::hypot(0.2, 0.1))));

  // hyperbolic L^2 mass, base side (radial quadrature)
  const double base_mass =
      integrate(
          [&](double r) {
            const double d = 2.0 / (1.0 - r * r);
            const double v = base.value(r);
            return v * v * d * d * 2.0 * kPi * r;
          },
          0.0, 0.45, 1e-10)
          .value;

  for (std::size_t k = 1; k < family.size(); ++k) {
    const BallImage ball = family[k].support_ball();
    const BallImage oracle =
        mobius_ball_image(MobiusMap::axis(centers[k]), base.support_radius());
    CHECK(ball.center[0] == doctest::Approx(oracle.center[0]).epsilon(1e-14));
    CHECK(ball.radius == doctest::Approx(oracle.radius).epsilon(1e-14));

    // image-side mass on a local grid with the hyperbolic weight
    const int n = 384;
    const double pad = 1.02 * ball.radius;
    double mass = 0.0;
    const double h = 2.0 * pad / n;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = ball.center[0] - pad + (i + 0.5) * h;
        const double y = ball.center[1] - pad + (j + 0.5) * h;
        const double v = family[k].value(x, y);
        if (v == 0.0) continue;
        const double d = 2.0 / (1.0 - x * x - y * y);
        mass += v * v * d * d * h * h;
      }
    CHECK(mass == doctest::Approx(base_mass).epsilon(0.01));
  }
}

TEST_CASE("mobius equality case of the hyperbolic radial bound") {
  // moser(N,k) rescaled to the unit disc achieves the bound at the plateau edge
  for (int N : {2, 3}) {
    for (int k = 1; k <= 3; ++k) {
      RadialProfile unit = moser(N, k).rescaled(static_cast<double>(k));
      CHECK(unit.support_radius() == doctest::Approx(1.0).epsilon(1e-15));
      const double r_edge = std::exp(-std::pow(static_cast<double>(k), N));
      const double bound =
          std::pow(dirichlet_energy(unit, N), 1.0 / N) *
          std::pow(std::log(1.0 / r_edge), (N - 1.0) / N) /
          std::pow(sphere_measure(N), 1.0 / N);
      CHECK(unit.value(r_edge * (1 + 1e-12)) ==
            doctest::Approx(bound).epsilon(1e-10));
    }
  }
}
