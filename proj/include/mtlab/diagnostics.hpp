#pragma once

#include <array>
#include <string>
#include <vector>

#include "mtlab/functionals.hpp"
#include "mtlab/geometry.hpp"

namespace mtlab {

struct MassProfile {
  double energy_ball = 0.0;   // Dirichlet energy inside B_eps(0)
  double energy_total = 0.0;
  double mt_ball = 0.0;       // Phi integral inside B_eps(0)
  double mt_window = 0.0;     // Phi integral inside Omega_R
  double mt_total = 0.0;
};

MassProfile mass_profile(const GridFunction& u, double eps, double window_R,
                         const TruncatedExpSpec& spec);

struct ThetaReport {
  double theta = 0.0;
  double theta_half = 0.0;  // recomputed at eps/2
  bool stabilized = false;
  double s_ref = 0.0;
};

/// theta = (Phi mass of the last member inside B_eps) / S_ref, with an
/// eps-stability check at eps/2. S_ref <= 0 selects the running supremum of
/// the member totals, the desk-scale stand-in for the unknown S.
ThetaReport theta_statistic(const std::vector<GridFunction>& family, double eps,
                            double s_ref = 0.0);

enum class Verdict { Concentrating, Vanishing, Dichotomy, Compact, Undetermined };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  double theta = 0.0;
  std::array<double, 2> point{};  // argmax-energy cell for concentration
  std::vector<MassProfile> evidence;
};

struct ClassifyOptions {
  double eps = 0.1;
  double window_R = 0.0;  // 0: half the truncation
  double hi = 0.95;
  double lo = 0.05;
};

/// Trichotomy verdict from the mass-profile trends:
/// theta > hi -> concentrating; window mass fraction < lo -> vanishing;
/// theta in [lo, hi] with an escaping remainder -> dichotomy; else compact.
Classification classify(const std::vector<GridFunction>& family,
                        const ClassifyOptions& opts = {});

struct EnvelopeReport {
  bool pass = false;
  double worst_margin = 0.0;  // max over nodes of u^4 - envelope (negative = slack)
  std::size_t checked = 0;
};

/// Pointwise envelope for the symmetric class on the strip, outside B_eps(0):
/// u^4 <= (1/sqrt(lambda1)+1)^4/x2^2 for |x1| <= 1, u^4 <= 4/x1^2 beyond.
/// Throws class-violation when the monotonicity flags fail.
EnvelopeReport envelope_check(const GridFunction& u, double lambda1,
                              double eps = 0.1);

struct RemainderReport {
  std::vector<double> l1;  // per member: ||tail(u_k) - tail(limit)||_L1(window)
  bool pass = false;
};

/// Tail compactness on Omega_R minus B_eps: tail(v) = exp(4 pi v^2)-1-4 pi v^2.
/// PASS when the L1 differences trend down below tol.
RemainderReport remainder_compactness_check(const std::vector<GridFunction>& family,
                                            const GridFunction& limit, double eps,
                                            double R, double tol = 1e-3);

}  // namespace mtlab
