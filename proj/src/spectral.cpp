#include "mtlab/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mtlab/functionals.hpp"

namespace mtlab {

double rectangle_lambda1(double k) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  return kPi * kPi * (k * k + 1.0) / (4.0 * k * k);
}

double rayleigh(const GridFunction& u, int N) {
  const double denom = grid_integral(
      u, [N](double v) { return std::pow(std::abs(v), N); });
  if (denom == 0.0) throw std::invalid_argument("zero-function");
  return dirichlet_energy(u, N) / denom;
}

namespace {

// 5-point Dirichlet Laplacian, cell-centered: the wall-adjacent flux uses the
// odd-reflected ghost value, so the diagonal picks up 2/h^2 there.
struct Stencil {
  int nx, ny;
  double ax, ay;  // 1/hx^2, 1/hy^2

  void apply(const std::vector<double>& u, std::vector<double>& out) const {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t id = i + static_cast<std::size_t>(nx) * j;
        const double c = u[id];
        double sx, sy;
        if (i == 0)
          sx = (3.0 * c - u[id + 1]) * ax;
        else if (i == nx - 1)
          sx = (3.0 * c - u[id - 1]) * ax;
        else
          sx = (2.0 * c - u[id - 1] - u[id + 1]) * ax;
        if (j == 0)
          sy = (3.0 * c - u[id + nx]) * ay;
        else if (j == ny - 1)
          sy = (3.0 * c - u[id - nx]) * ay;
        else
          sy = (2.0 * c - u[id - nx] - u[id + nx]) * ay;
        out[id] = sx + sy;
      }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Conjugate gradient for the SPD stencil.
int cg_solve(const Stencil& A, const std::vector<double>& b, std::vector<double>& x,
             double rel_tol, int max_iters) {
  const std::size_t n = b.size();
  std::vector<double> r(n), p(n), Ap(n);
  A.apply(x, Ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
  p = r;
  double rr = dot(r, r);
  const double stop = rel_tol * rel_tol * dot(b, b);
  int it = 0;
  while (rr > stop && it < max_iters) {
    A.apply(p, Ap);
    const double alpha = rr / dot(p, Ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
    ++it;
  }
  return it;
}

}  // namespace

EigenResult lambda1_numeric(double k, int nx, int ny, double tol, int max_iters) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (nx < 8 || ny < 8) throw std::invalid_argument("resolution too coarse");

  EigenResult res;
  res.eigenvector = GridFunction::zeros(DomainSpec::rectangle(k), nx, ny);
  const Grid& g = res.eigenvector.grid;
  Stencil A{nx, ny, 1.0 / (g.hx() * g.hx()), 1.0 / (g.hy() * g.hy())};

  const std::size_t n = res.eigenvector.values.size();
  std::vector<double> v(n), w(n), Av(n);
  // deterministic positive start: product parabola
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      v[i + static_cast<std::size_t>(nx) * j] =
          (k * k - g.cx(i) * g.cx(i)) * (1.0 - g.cy(j) * g.cy(j));
  double norm = std::sqrt(dot(v, v));
  for (auto& x : v) x /= norm;

  double lambda = 0.0, lambda_prev = 0.0;
  int outer = 0;
  for (; outer < max_iters; ++outer) {
    w = v;  // warm start
    cg_solve(A, v, w, 1e-12, static_cast<int>(4 * n));
    norm = std::sqrt(dot(w, w));
    for (auto& x : w) x /= norm;
    A.apply(w, Av);
    lambda = dot(w, Av);
    v.swap(w);
    if (outer > 0 && std::abs(lambda - lambda_prev) <= tol * lambda) {
      ++outer;
      break;
    }
    lambda_prev = lambda;
  }

  double orient = 0.0;
  for (double x : v) orient += x;
  if (orient < 0)
    for (auto& x : v) x = -x;
  res.eigenvector.values = v;
  res.lambda1 = lambda;
  res.iterations = outer;
  A.apply(v, Av);
  double rnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = Av[i] - lambda * v[i];
    rnorm += ri * ri;
  }
  res.residual = std::sqrt(rnorm);
  res.converged = outer < max_iters;
  return res;
}

}  // namespace mtlab
