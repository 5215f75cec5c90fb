#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mtlab/conformal.hpp"
#include "mtlab/geometry.hpp"

namespace mtlab {

/// Even, nondecreasing-on-[0,inf) nonlinearity with evaluators for the value,
/// its log (needed where the value overflows a double), and the logarithmic
/// derivative f'/f (valid for large arguments, where the growth index lives).
struct Nonlinearity {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> log_f;
  std::function<double(double)> dlog;

  double operator()(double u) const { return f(std::abs(u)); }
};

// Families from the counterexample construction.
Nonlinearity nl_power(double p);                       // |u|^p
Nonlinearity nl_max_power(int N, double p);            // max(|u|^N, |u|^p)
Nonlinearity nl_log_damped(int N, double p);           // max(|u|^N, |u|^p/(1+log(1+|u|)))
Nonlinearity nl_phi_alpha(int N, double alpha);        // Phi^alpha
Nonlinearity nl_phi_alpha_damped(int N, double alpha); // Phi^alpha/(1+|u|)
Nonlinearity nl_phi_alpha_boosted(int N, double alpha);// (1+|u|) Phi^alpha
Nonlinearity nl_exp_fractional(int N, double beta, double q);
Nonlinearity nl_exp_linear(int N, double c);           // e^{c|u|} - sum_{j<N} (c|u|)^j/j!
Nonlinearity nl_floor_or(int N, double p, bool log_factor);  // max(e^{-1/u}, |u|^p [log|u|])
Nonlinearity nl_floor_or_nlog(int N);                  // max(e^{-1/u}, |u|^N log|u|)
Nonlinearity nl_f0(int N);                             // e^{alpha_N |u|^q}/|u|^{2q}
Nonlinearity nl_phi_over_power(int N);                 // Phi/(1+|u|^{2N/(N-1)})

/// Moser-height argument of the tilde transform: (log 1/R)^{(N-1)/N}/omega^{1/N}.
double tilde_argument(double log_inv_R, int N);

/// f~(R) = f((log 1/R)^{(N-1)/N}/omega^{1/N}); throws for R >= 1.
double tilde_transform(const Nonlinearity& f, double R, int N);

/// log f~ taken directly from log(1/R), safe for radii far below underflow.
double tilde_log(const Nonlinearity& f, double log_inv_R, int N);

struct GrowthIndexResult {
  double index = 0.0;
  std::array<double, 3> samples{};  // estimates at u = 1e2, 1e3, 1e4
  bool converged = false;
};

/// index = N - (N-1)/alpha_N * lim f'(u)/(u^{1/(N-1)} f(u)), evaluated at three
/// decades; condition 3 of the counterexample construction holds iff > 0.
GrowthIndexResult growth_index(const Nonlinearity& f, int N);

struct BumpRow {
  double center = 0.0;         // x_k on the positive first axis
  double log_inv_R = 0.0;      // log(1/R_k)
  double log_amplitude = 0.0;  // log a_k
};

struct BumpMetricSpec {
  int N = 2;
  std::string case_tag;
  std::string schedule;  // geometric | quadratic | targeted | case7
  std::vector<BumpRow> rows;

  double R(std::size_t k) const;          // may underflow to 0 for late rows
  double amplitude(std::size_t k) const;  // may overflow to inf

  /// zeta(y) = 1 + sum_k eta_k(y) with eta_k = a_k * beta(|phi_{x_k}^{-1} y| / R_k).
  double zeta(double y1, double y2) const;

  std::string serialize() const;
  static BumpMetricSpec parse(const std::string& text);
};

/// Builds the bump metric for a pair (f1, f2): verifies f1/f2 -> 0, picks the
/// radius schedule (geometric 2^{-k}, then e^{-k^2}, then a ratio-targeted
/// solve when the upper series still does not stabilize; growth index ~ 0
/// selects the a_k = k, R_k = e^{-k^3} schedule), sets the amplitudes
/// a_k = 1/(R_k^N sqrt(f1~ f2~)), and places the centers by the hyperbolic
/// separation recursion with a 1.01 safety factor.
BumpMetricSpec build_metric(const Nonlinearity& f1, const Nonlinearity& f2, int N,
                            int K, const std::string& tag = "");

/// (upper_k, lower_k) = (a_k R_k^N f1~(R_k), omega/(2N) a_k R_k^N f2~(R_k)),
/// computed in log space from the stored schedule. k is 1-based.
std::array<double, 2> bound_terms(const BumpMetricSpec& spec, const Nonlinearity& f1,
                                  const Nonlinearity& f2, int N, std::size_t k);

/// Centers on the positive first axis from the hyperbolic separation
/// recursion (consecutive supports tangent-or-disjoint) with a 1.01 safety
/// factor applied in rapidity, which also drives the centers to the boundary.
std::vector<double> separation_centers(const std::vector<double>& log_inv_R);

struct CappedMoserCheck {
  double value_at_zero = 0.0;
  double expected_value_at_zero = 0.0;
  double closed_form_energy = 0.0;
  double support_radius = 0.0;
  double transported_energy = 0.0;  // grid energy of w_k o phi_{x_k}^{-1}
  bool resolvable = false;          // plateau covers >= 3 cells of the image grid
};

/// Energy normalization of the capped Moser function attached to row k, plus
/// the Euclidean grid energy of its Mobius transport (conformal invariance
/// makes it 1 up to grid error). k is 1-based; grid_n resolves the image ball.
CappedMoserCheck capped_moser_energy_check(const BumpMetricSpec& spec, std::size_t k,
                                           int N, int grid_n = 256);

struct CasePreset {
  int id = 0;
  Nonlinearity f1;
  Nonlinearity f2;  // for case 7 this slot carries the comparison function f0
};

/// The seven pairs from the integrability trichotomy list; p > N and
/// alpha in (0, alpha_N) parameterize the power/Phi cases.
CasePreset case_preset(int case_id, int N, double p = 0.0, double alpha = 0.0);

/// Rayleigh-collapse mechanism: for u_k = u o phi_{x_k}^{-1} under a conformal
/// metric zeta * g_h, returns per-k ratios int |u_k|^N dV / int |grad u_k|^N dV.
/// The numerator is evaluated in the parametric ball (hyperbolic isometry),
/// the denominator is the conformally invariant Euclidean energy of u.
std::vector<double> poincare_collapse_ratios(
    const std::function<double(double, double)>& zeta, const RadialProfile& base,
    const std::vector<double>& centers, int N, int nr = 192, int ntheta = 96);

}  // namespace mtlab
