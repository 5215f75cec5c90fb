#pragma once

#include <stdexcept>
#include <vector>

#include "mtlab/geometry.hpp"

namespace mtlab {

/// Truncated exponential nonlinearity
///   Phi(u) = exp(alpha |u|^{N/(N-1)}) - sum_{j<k_trunc} alpha^j |u|^{jN/(N-1)} / j!
/// k_trunc = N-1 gives the functional whose first retained power is |u|^N.
struct TruncatedExpSpec {
  int N = 2;
  double alpha = 0.0;
  int k_trunc = 1;

  static TruncatedExpSpec sharp(int N);                    // alpha = alpha_N
  static TruncatedExpSpec with_alpha(int N, double alpha); // k_trunc = N-1
  static TruncatedExpSpec phi_k(int N, int k);             // alpha = alpha_N, k terms removed
};

/// Signals an exponent argument beyond the representable range; divergence
/// detection is a feature, Moser sequences are supposed to trip this.
struct PhiOverflow : std::runtime_error {
  double exponent_argument;
  explicit PhiOverflow(double x);
};

/// exp(x) - sum_{j<n_removed} x^j/j! for x >= 0, evaluated by tail series
/// below the branch point and exp-minus-partial-sum above (the subtraction
/// cancels catastrophically only for small x). Throws PhiOverflow for x > 700.
double truncated_exp(double x, int n_removed);

/// log of truncated_exp, safe for any x >= 0 (never forms exp(x) for large x).
double log_truncated_exp(double x, int n_removed);

/// Stable evaluation of Phi: tail series below the branch point, exp minus
/// partial sum above. Relative error <= 1e-12 across magnitudes.
double phi_eval(const TruncatedExpSpec& spec, double u);

struct IdentityReport {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Checks Phi^alpha(u) = Phi((alpha/alpha_N)^{(N-1)/N} u) at the given samples
/// (requires k_trunc = N-1). Default samples cover small/switchover/large.
IdentityReport phi_identity_check(const TruncatedExpSpec& spec,
                                  const std::vector<double>& samples = {});

struct TailBoundReport {
  bool pass = false;
  double worst_ratio = 0.0;
};

/// Phi(u) <= alpha_N^{N-1} |u|^N exp(alpha_N |u|^{N/(N-1)}) / (N-1)! at every
/// sample; returns the worst Phi/bound ratio.
TailBoundReport tail_bound_check(int N, const std::vector<double>& u_samples);

struct OverflowInfo {
  bool overflowed = false;
  double exponent_argument = 0.0;
  double u_value = 0.0;
  double x = 0.0, y = 0.0;  // grid location when known
};

/// Integral of Phi over the domain. On overflow returns +infinity and, when
/// `info` is given, records where the evaluation blew up.
double mt_functional(const RadialProfile& u, const TruncatedExpSpec& spec,
                     OverflowInfo* info = nullptr);
double mt_functional(const GridFunction& u, const TruncatedExpSpec& spec,
                     OverflowInfo* info = nullptr);

/// int |grad u|^N. Exact per-segment closed form for piecewise-analytic radial
/// profiles; step profiles use the piecewise-linear reconstruction through
/// annulus midpoints; grids use the discrete gradient.
double dirichlet_energy(const RadialProfile& u, int N);
double dirichlet_energy(const GridFunction& u, int N);

/// (int |u|^p)^{1/p}; p may be non-integer (the Phi_k quotient needs kN/(N-1)).
double lp_norm(const RadialProfile& u, double p, int N);
double lp_norm(const GridFunction& u, double p);

}  // namespace mtlab
