#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"

using namespace mtlab;

namespace {

// Long-double tail-series oracle for exp(x) - sum_{j<k} x^j/j!, trustworthy
// for moderate x where the series converges quickly.
long double tail_series_oracle(long double x, int k) {
  long double term = 1.0L;
  for (int j = 1; j <= k; ++j) term *= x / j;
  long double sum = 0.0L;
  for (int j = k; j < k + 120; ++j) {
    sum += term;
    term *= x / (j + 1);
  }
  return sum;
}

}  // namespace

TEST_CASE("phi_eval pinned values") {
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  CHECK(phi_eval(s2, 0.0) == 0.0);
  CHECK(phi_eval(s2, 1.0) == doctest::Approx(std::expm1(4.0 * kPi)).epsilon(1e-13));
  // small-argument branch: leading tail term alpha*u^2, no cancellation
  const double u = 1e-4;
  const double lead = 4.0 * kPi * u * u;
  CHECK(phi_eval(s2, u) == doctest::Approx(lead * (1.0 + lead / 2.0)).epsilon(1e-10));
}

TEST_CASE("phi_eval leading tail term at N=3, two terms removed") {
  TruncatedExpSpec spec{3, sharp_exponent(3), 2};
  const double u = 1e-5;
  const double lead = 0.5 * spec.alpha * spec.alpha * std::pow(u, 3.0);
  CHECK(phi_eval(spec, u) / lead == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("phi_eval branch agreement across the switchover band") {
  for (int N : {2, 3, 4}) {
    const TruncatedExpSpec spec = TruncatedExpSpec::sharp(N);
    const double q = static_cast<double>(N) / (N - 1);
    for (double x = 0.5; x <= 2.0; x += 0.05) {
      const double u = std::pow(x / spec.alpha, 1.0 / q);
      const double got = phi_eval(spec, u);
      const double want = static_cast<double>(tail_series_oracle(x, N - 1));
      CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
  }
}

TEST_CASE("phi_eval overflow signalling") {
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  CHECK_THROWS_AS(phi_eval(s2, 10.0), PhiOverflow);
  try {
    phi_eval(s2, 10.0);
  } catch (const PhiOverflow& e) {
    CHECK(e.exponent_argument == doctest::Approx(4.0 * kPi * 100.0));
  }
}

TEST_CASE("phi_eval is even, nondecreasing, and above the first retained term") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  for (int N : {2, 3}) {
    const TruncatedExpSpec spec = TruncatedExpSpec::sharp(N);
    const double q = static_cast<double>(N) / (N - 1);
    double fact = 1.0;
    for (int i = 2; i <= spec.k_trunc; ++i) fact *= i;
    double prev = 0.0;
    for (double u = 0.0; u <= 2.0; u += 0.01) {
      const double v = phi_eval(spec, u);
      CHECK(v >= prev - 1e-12);
      CHECK(v == phi_eval(spec, -u));
      prev = v;
    }
    for (int i = 0; i < 50; ++i) {
      const double u = dist(rng);
      const double first = std::pow(spec.alpha, spec.k_trunc) *
                           std::pow(u, spec.k_trunc * q) / fact;
      CHECK(phi_eval(spec, u) >= first * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("phi identity Phi^alpha(u) = Phi(scaled u)") {
  CHECK(phi_identity_check(TruncatedExpSpec::sharp(2)).max_deviation == 0.0);
  const auto r2 = phi_identity_check(TruncatedExpSpec::with_alpha(2, 2.0 * kPi),
                                     {0.5, 1.0, 2.0});
  CHECK(r2.pass);
  CHECK(r2.max_deviation < 1e-12);
  const auto r3 = phi_identity_check(TruncatedExpSpec::with_alpha(3, 5.0), {1.0});
  CHECK(r3.pass);
}

TEST_CASE("tail bound at pinned samples and log-spaced sweeps") {
  {
    const auto rep = tail_bound_check(2, {0.0, 1.0});
    CHECK(rep.pass);
    // (e^{4 pi} - 1) / (4 pi e^{4 pi}) < 1
    CHECK(rep.worst_ratio ==
          doctest::Approx(std::expm1(4 * kPi) / (4 * kPi * std::exp(4 * kPi)))
              .epsilon(1e-12));
  }
  CHECK(tail_bound_check(3, {2.0}).worst_ratio < 1.0);
  for (int N : {2, 3}) {
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i)
      samples.push_back(std::pow(10.0, -6.0 + 6.5 * i / 999.0));
    const auto rep = tail_bound_check(N, samples);
    CHECK(rep.pass);
    CHECK(rep.worst_ratio <= 1.0);
  }
}

TEST_CASE("mt functional on Moser profiles dominates the plateau bound") {
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  double prev = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double value = mt_functional(moser(2, k), s2);
    const double bound = k * k * (1.0 - std::exp(-2.0 * k * k));
    CHECK(value >= bound);
    CHECK(value > prev);
    prev = value;
  }
}

TEST_CASE("mt functional propagates overflow with location") {
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  OverflowInfo info;
  // plateau exponent 2 k^2 = 722 crosses the overflow threshold
  const double v = mt_functional(moser(2, 19), s2, &info);
  CHECK(std::isinf(v));
  CHECK(info.overflowed);
  CHECK(info.exponent_argument > 700.0);

  GridFunction g = GridFunction::zeros(DomainSpec::rectangle(1), 16, 16);
  g.at(5, 7) = 10.0;
  OverflowInfo gi;
  CHECK(std::isinf(mt_functional(g, s2, &gi)));
  CHECK(gi.overflowed);
  CHECK(gi.x == doctest::Approx(g.grid.cx(5)));
  CHECK(gi.y == doctest::Approx(g.grid.cy(7)));
}

TEST_CASE("dirichlet energy of Moser profiles is exactly one") {
  for (int N : {2, 3, 4})
    for (int k = 1; k <= 6; ++k)
      CHECK(dirichlet_energy(moser(N, k), N) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid eigenfunction norms match separation of variables") {
  GridFunction phi2 = strip_eigenfunction(2, 2.0, 256, 128);
  CHECK(grid_integral(phi2, [](double t) { return t * t; }) ==
        doctest::Approx(2.0).epsilon(5e-3));
  CHECK(dirichlet_energy(phi2, 2) ==
        doctest::Approx(5.0 * kPi * kPi / 8.0).epsilon(5e-3));
  CHECK(lp_norm(strip_eigenfunction(3, 3.0, 384, 128), 2) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(5e-3));
}

TEST_CASE("lp norm accepts non-integer exponents and bounds the Moser L^N mass") {
  RadialProfile u = moser(2, 2);
  CHECK(lp_norm(u, 2, 2) <= 0.5 + 1e-12);
  const double p = 2.0 * 3.0 / 1.0;  // kN/(N-1) style fractional-use exponent
  CHECK(lp_norm(u, p, 2) > 0.0);
  CHECK_THROWS_AS(lp_norm(u, 0.5, 2), std::invalid_argument);
}

TEST_CASE("jensen closed form for the normalized eigenfunction") {
  GridFunction phi4 = strip_eigenfunction(4, 4.0, 512, 128);
  const double energy = dirichlet_energy(phi4, 2);
  for (auto& v : phi4.values) v /= std::sqrt(energy);
  const double value = mt_functional(phi4, TruncatedExpSpec::sharp(2));
  CHECK(value >= 16.0 * std::expm1(16.0 / (17.0 * kPi)));
}
