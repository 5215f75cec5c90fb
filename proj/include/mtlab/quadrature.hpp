#pragma once

#include <functional>
#include <stdexcept>

namespace mtlab {

/// Raised when an adaptive quadrature cannot reach the requested tolerance;
/// carries the error estimate that was actually achieved.
struct ToleranceNotMet : std::runtime_error {
  double achieved;
  explicit ToleranceNotMet(double achieved_error);
};

struct QuadResult {
  double value;
  double error;  // estimate
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f on [a,b] to an absolute
/// tolerance. Throws ToleranceNotMet when the recursion depth is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, int max_depth = 55);

}  // namespace mtlab
