#pragma once

#include <vector>

#include "mtlab/conformal.hpp"
#include "mtlab/geometry.hpp"

namespace mtlab {

/// Moser function: plateau k^{N-1}/omega^{1/N} on |x| <= k e^{-k^N}, then
/// log(k/|x|)/(k omega^{1/N}) out to |x| = k. Unit Dirichlet N-energy by
/// construction (closed form per segment).
RadialProfile moser(int N, int k);

/// v_k(x) = u_k((N!/(N^{N+1} C))^{1/N} x): unit energy, int |v|^N <= C, and
/// the Phi integral scales by N^{N+1} C / N!.
RadialProfile scaled_moser(int N, int k, double C);

/// Capped Moser profile: plateau (log 1/R)^{(N-1)/N}/omega^{1/N} on
/// |x| < R/2, then log(1/(2|x|))/((log 1/R)^{1/N} omega^{1/N}) out to 1/2.
RadialProfile capped_moser(int N, double R);

/// Same, with R = exp(-log_inv_R) given in log space (schedules like
/// R_k = e^{-k^3} underflow a double).
RadialProfile capped_moser_from_log(int N, double log_inv_R);

/// First Dirichlet eigenfunction of Omega_k = (-k,k) x (-1,1) extended by 0
/// to a strip grid of half-length L >= k:
/// cos(pi x1/(2k)) cos(pi x2/2). Throws when fewer than min_cells_across
/// cells fall across Omega_k.
GridFunction strip_eigenfunction(int k, double L, int nx, int ny,
                                 int min_cells_across = 16);

/// Jensen bound 4k (e^{4k/(pi (k^2+1))} - 1) for the normalized eigenfunction;
/// exceeds 16/pi for all k >= 2 and tends to it from above.
double jensen_lower_bound(double k);

/// Translate by (k, 0), snapped to whole cells. Throws when nonzero values
/// would leave the grid.
GridFunction vanishing_family_member(const GridFunction& base, double k);

/// u_k = u o phi_{x_k}^{-1} for a radial bump u supported in B_{1/2} and
/// centers x_k e_1; each member is supported in phi_{x_k}(B_{1/2}).
struct MobiusBump {
  double center;       // x_k, on the first axis
  RadialProfile base;  // supported in B_{1/2}

  double value(double y1, double y2) const;
  BallImage support_ball() const;
};

std::vector<MobiusBump> mobius_bump_family(const RadialProfile& base,
                                           const std::vector<double>& centers);

/// Sample a radial profile onto a grid (value 0 outside its support).
GridFunction realize(const RadialProfile& profile, const DomainSpec& domain,
                     int nx, int ny);

/// Smooth radial bump: amplitude * beta(|x|/radius) with the quintic-plateau
/// bump beta (1 on [0,1/2], smooth monotone to 0 at 1).
GridFunction smooth_bump(const DomainSpec& domain, int nx, int ny,
                         double center_x, double center_y, double radius,
                         double amplitude);

/// The bump profile itself.
double bump_beta(double t);

}  // namespace mtlab
