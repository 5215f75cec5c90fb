#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace mtlab {

inline constexpr double kPi = 3.14159265358979323846;

/// Gamma function; integer and half-integer arguments are short-circuited to
/// closed forms so that sphere measures come out exact for the dimensions the
/// acceptance ranges use. Everything else goes through a Lanczos fit.
double gamma_fn(double x);

/// omega_{N-1} = N pi^{N/2} / Gamma(N/2+1), the surface measure of S^{N-1}.
double sphere_measure(int N);

/// alpha_N = N omega_{N-1}^{1/(N-1)}, the sharp exponent.
double sharp_exponent(int N);

struct DimensionalConstants {
  int N;
  double omega;
  double alpha_sharp;
  static DimensionalConstants make(int N);
};

enum class DomainKind { Ball, Strip, Rectangle, Disc };

struct DomainSpec {
  DomainKind kind = DomainKind::Strip;
  double radius = 1.0;       // Ball
  double truncation = 8.0;   // Strip half-length L
  double half_length = 1.0;  // Rectangle k

  /// Closed-form inradius where known (strip: 1, rectangle: min(k,1),
  /// ball/disc: the radius).
  double inradius() const;

  static DomainSpec ball(double radius);
  static DomainSpec strip(double truncation);
  static DomainSpec rectangle(double half_length);
  static DomainSpec disc();
};

// ---------------------------------------------------------------------------
// Radial profiles
// ---------------------------------------------------------------------------

/// Analytic radial piece parameterized in t = log(scale/r), i.e.
/// r = scale*exp(-t). Keeping t instead of r lets plateau radii as small as
/// exp(-k^N) stay representable.
///   Plateau:   U = value on r in [0, scale*exp(-t_lo)]  (t_hi unused)
///   LogLinear: U = coeff * t on t in [t_lo, t_hi]
struct RadialSegment {
  enum class Kind { Plateau, LogLinear };
  Kind kind;
  double scale = 1.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double value = 0.0;
  double coeff = 0.0;

  static RadialSegment plateau(double scale, double t_lo, double value);
  static RadialSegment log_linear(double scale, double t_lo, double t_hi, double coeff);
};

/// Step (annular) profile produced by rearrangement of grid data: strictly
/// descending positive values, each occupying `count` cells of one common
/// cell measure. Radii are the outer annulus radii for dimension `dim`.
struct StepProfile {
  std::vector<double> values;
  std::vector<std::int64_t> counts;
  double unit_measure = 0.0;
  int dim = 2;
  std::vector<double> radii;
};

/// Piecewise-linear sampled profile: nodes (r[i], u[i]) with r ascending,
/// value 0 beyond the last node.
struct SampledProfile {
  std::vector<double> r;
  std::vector<double> u;
};

class RadialProfile {
 public:
  using Rep = std::variant<std::vector<RadialSegment>, StepProfile, SampledProfile>;

  RadialProfile() = default;

  static RadialProfile from_segments(std::vector<RadialSegment> segments,
                                     double support_radius, bool monotone = true);
  static RadialProfile from_steps(StepProfile steps);
  static RadialProfile from_samples(SampledProfile samples, bool monotone);

  double value(double r) const;
  double support_radius() const { return support_; }
  bool monotone() const { return monotone_; }
  const Rep& rep() const { return rep_; }

  /// Profile r -> U(s*r): all radii divided by s. Energies are invariant.
  RadialProfile rescaled(double s) const;

 private:
  Rep rep_;
  double support_ = 0.0;
  bool monotone_ = true;
};

/// omega_{N-1} * int_0^inf f(U(rho)) rho^{N-1} drho. Piecewise-analytic
/// segments are integrated per segment with the substitution t = log(scale/rho)
/// (log pieces stay smooth, plateaus are closed-form); step profiles sum
/// exactly; sampled profiles use adaptive quadrature per interval.
double radial_integral(const RadialProfile& profile,
                       const std::function<double(double)>& integrand, int N,
                       double abs_tol = 1e-10);

/// |{U > t}| in R^N for monotone profiles.
double distribution(const RadialProfile& profile, double t, int N);

// ---------------------------------------------------------------------------
// Tensor grids
// ---------------------------------------------------------------------------

/// Uniform cell-centered tensor grid on [xlo,xhi] x [ylo,yhi]; every cell has
/// the same measure, which makes rearrangements exactly equimeasurable at cell
/// resolution. Values of functions in the discrete Dirichlet class vanish on
/// the outermost cell ring and are treated as 0 beyond the grid.
struct Grid {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  int nx = 1, ny = 1;

  double hx() const { return (xhi - xlo) / nx; }
  double hy() const { return (yhi - ylo) / ny; }
  double cell_measure() const { return hx() * hy(); }
  double cx(int i) const { return xlo + (i + 0.5) * hx(); }
  double cy(int j) const { return ylo + (j + 0.5) * hy(); }
  std::int64_t size() const { return static_cast<std::int64_t>(nx) * ny; }

  static Grid over(const DomainSpec& domain, int nx, int ny);
};

struct GridFunction {
  Grid grid;
  DomainSpec domain;
  std::vector<double> values;  // i + nx*j

  static GridFunction zeros(const DomainSpec& domain, int nx, int ny);

  double& at(int i, int j) { return values[i + static_cast<std::size_t>(grid.nx) * j]; }
  double at(int i, int j) const { return values[i + static_cast<std::size_t>(grid.nx) * j]; }

  /// Bilinear interpolation between cell centers, 0 outside the grid.
  double sample(double x, double y) const;
};

/// sum integrand(value) * cell_measure; exact for cellwise-constant data.
double grid_integral(const GridFunction& u, const std::function<double(double)>& integrand);

/// sum f(x, y, value) * cell_measure over cells (for metric-weighted integrals).
double grid_integral_weighted(const GridFunction& u,
                              const std::function<double(double, double, double)>& f);

/// Total cell measure where value > t (count * cell_measure, so two grids with
/// equal multisets give bit-identical results).
double distribution(const GridFunction& u, double t);

/// Discrete gradient: centered differences in the interior, one-sided on the
/// boundary ring.
void gradient_at(const GridFunction& u, int i, int j, double& gx, double& gy);

/// Sample a radial profile onto an n x n cell-centered grid over [-half,half]^2.
GridFunction sample_radial(const RadialProfile& profile, double half, int n);

}  // namespace mtlab
