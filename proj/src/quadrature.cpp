#include "mtlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mtlab {

ToleranceNotMet::ToleranceNotMet(double achieved_error)
    : std::runtime_error("tolerance-not-met: achieved error estimate " +
                         std::to_string(achieved_error)),
      achieved(achieved_error) {}

namespace {

// Gauss-Kronrod (G7,K15) nodes and weights, positive half.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double fsum = f(c - x) + f(c + x);
    result_kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) result_gauss += kWg[i / 2] * fsum;
  }
  const double value = result_kronrod * h;
  const double error = std::abs((result_kronrod - result_gauss) * h);
  return {value, error};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, double& value, double& error) {
  Panel p = gk15(f, a, b);
  if (p.error <= tol || depth <= 0) {
    value += p.value;
    error += p.error;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth - 1, value, error);
  adapt(f, c, b, 0.5 * tol, depth - 1, value, error);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth) {
  if (a == b) return {0.0, 0.0};
  double value = 0.0, error = 0.0;
  adapt(f, a, b, abs_tol, max_depth, value, error);
  if (!(error <= 2.0 * abs_tol) && !(error <= 1e-13 * std::abs(value)))
    throw ToleranceNotMet(error);
  return {value, error};
}

}  // namespace mtlab
