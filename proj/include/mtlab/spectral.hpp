#pragma once

#include "mtlab/geometry.hpp"

namespace mtlab {

/// lambda_1(Omega_k) = pi^2 (k^2+1) / (4 k^2) by separation of variables;
/// decreasing in k with limit pi^2/4, the strip value.
double rectangle_lambda1(double k);

/// int |grad u|^N / int |u|^N; scale-invariant. Throws on the zero function.
double rayleigh(const GridFunction& u, int N);

struct EigenResult {
  double lambda1 = 0.0;
  GridFunction eigenvector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// First Dirichlet eigenvalue of -Laplace on Omega_k = (-k,k) x (-1,1) by
/// inverse power iteration on the 5-point stencil (cell-centered, ghost
/// reflection at the walls), conjugate-gradient inner solves. N = 2 only.
EigenResult lambda1_numeric(double k, int nx, int ny, double tol = 1e-10,
                            int max_iters = 10000);

}  // namespace mtlab
