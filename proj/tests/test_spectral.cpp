#include <doctest.h>

#include <cmath>

#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/spectral.hpp"

using namespace mtlab;

TEST_CASE("rectangle lambda1 closed form and trend") {
  CHECK(rectangle_lambda1(1) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
  CHECK(rectangle_lambda1(2) == doctest::Approx(5.0 * kPi * kPi / 16.0).epsilon(1e-15));
  CHECK(rectangle_lambda1(4) == doctest::Approx(17.0 * kPi * kPi / 64.0).epsilon(1e-15));
  double prev = rectangle_lambda1(1);
  for (double k = 2; k <= 64; k *= 2) {
    const double cur = rectangle_lambda1(k);
    CHECK(cur < prev);
    CHECK(cur > kPi * kPi / 4.0);
    prev = cur;
  }
  CHECK(rectangle_lambda1(1e6) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-11));
  // vanishing level identity: 4 pi / lambda1(infinity) = 16/pi
  CHECK(4.0 * kPi / rectangle_lambda1(1e6) ==
        doctest::Approx(16.0 / kPi).epsilon(1e-3));
}

TEST_CASE("rayleigh quotient: homogeneity and the eigenfunction value") {
  GridFunction phi = strip_eigenfunction(2, 2.0, 256, 128);
  const double base = rayleigh(phi, 2);
  GridFunction scaled = phi;
  for (auto& v : scaled.values) v *= 3.0;
  CHECK(rayleigh(scaled, 2) == doctest::Approx(base).epsilon(1e-13));
  CHECK(base == doctest::Approx(rectangle_lambda1(2)).epsilon(5e-3));
  CHECK(base >= rectangle_lambda1(2) * (1.0 - 0.05));

  GridFunction zero = GridFunction::zeros(DomainSpec::rectangle(2), 32, 16);
  CHECK_THROWS_AS(rayleigh(zero, 2), std::invalid_argument);
}

TEST_CASE("numeric eigenvalue matches separation of variables") {
  for (double k : {1.0, 4.0}) {
    const auto res = lambda1_numeric(k, 200, 100);
    CHECK(res.converged);
    CHECK(res.lambda1 == doctest::Approx(rectangle_lambda1(k)).epsilon(5e-3));
    // interior positivity
    double min_interior = 1e300;
    const auto& g = res.eigenvector.grid;
    for (int j = 2; j < g.ny - 2; ++j)
      for (int i = 2; i < g.nx - 2; ++i)
        min_interior = std::min(min_interior, res.eigenvector.at(i, j));
    CHECK(min_interior > 0.0);
    // cosine similarity against the closed-form eigenfunction
    GridFunction phi = strip_eigenfunction(static_cast<int>(k), k, g.nx, g.ny);
    double dot = 0, na = 0, nb = 0;
    for (std::size_t n = 0; n < phi.values.size(); ++n) {
      dot += phi.values[n] * res.eigenvector.values[n];
      na += phi.values[n] * phi.values[n];
      nb += res.eigenvector.values[n] * res.eigenvector.values[n];
    }
    CHECK(dot / std::sqrt(na * nb) > 0.999);
    // rayleigh of the eigenvector reproduces the eigenvalue
    CHECK(rayleigh(res.eigenvector, 2) == doctest::Approx(res.lambda1).epsilon(0.01));
  }
}
