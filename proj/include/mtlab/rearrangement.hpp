#pragma once

#include <vector>

#include "mtlab/geometry.hpp"

namespace mtlab {

/// Schwarz symmetrization: descending sort of (value, cell) pairs mapped to
/// concentric annuli of equal cumulative measure. Equidistributed with the
/// input exactly at cell resolution. Monotone radial inputs are fixed points.
RadialProfile schwarz(const GridFunction& u, int N = 2);
RadialProfile schwarz(const RadialProfile& u, int N);

/// Per-line symmetric-decreasing rearrangement along the chosen axis (1 or 2).
/// Each grid line keeps its multiset of values; cells are ranked by distance
/// from the line midpoint (ties: positive side first).
GridFunction steiner(const GridFunction& u, int axis);

/// u^{*,Omega} = (u^{*,1})^{*,2}: even-ish and nonincreasing in both variables
/// away from the center, equimeasurable with u, idempotent.
GridFunction double_symmetrize(const GridFunction& u);

/// H~ class check: nonincreasing in |x1| and |x2| from the center along every
/// line, and even up to one cell rank (`even_tol` absolute slack).
bool in_symmetric_class(const GridFunction& u, double even_tol = 0.0);

struct PolyaSzegoReport {
  double energy_original = 0.0;
  double energy_symmetrized = 0.0;
  double diff = 0.0;    // symmetrized - original
  double margin = 0.0;  // allowed one-sided slack
  bool pass = false;
};

/// Discrete Polya-Szego: energy(symmetrized) - energy(u) <= margin_frac * energy(u).
PolyaSzegoReport polya_szego_check(const GridFunction& u, const RadialProfile& sym,
                                   int N, double margin_frac = 0.02);
PolyaSzegoReport polya_szego_check(const GridFunction& u, const GridFunction& sym,
                                   int N, double margin_frac = 0.02);

struct LevelEnergyRow {
  double radius = 0.0;
  double level = 0.0;
  double lhs = 0.0;  // int_{B_r} |grad u*|^N
  double rhs = 0.0;  // int_{u > t} |grad u|^N
  bool pass = false;
};

struct LevelEnergyReport {
  std::vector<LevelEnergyRow> rows;
  bool pass = false;
};

/// Level-set energy comparison at t = u*(radius) for each radius.
LevelEnergyReport level_energy_check(const GridFunction& u,
                                     const std::vector<double>& radii, int N,
                                     double margin_frac = 0.02);

struct DecayBoundRow {
  double radius = 0.0;
  double lhs = 0.0;  // u*(r)^N
  double rhs = 0.0;  // N/(omega r^N lambda1) (1 - int_{B_r} |grad u*|^N)
  bool pass = false;
};

struct DecayBoundReport {
  std::vector<DecayBoundRow> rows;
  bool pass = false;
};

/// Decay bound for unit-energy u (throws energy-not-normalized otherwise).
DecayBoundReport decay_bound_check(const GridFunction& u, double lambda1,
                                   const std::vector<double>& radii, int N,
                                   double margin_frac = 0.02,
                                   double energy_tol = 0.05);

struct RadialBoundReport {
  double worst_excess = 0.0;  // max over radii of U(r) - bound(r)
  bool pass = false;
};

/// U(r) <= (N/omega)^{1/N} ||u||_{L^N} / r at the given radii (monotone profiles).
RadialBoundReport radial_bound_check(const RadialProfile& u,
                                     const std::vector<double>& radii, int N,
                                     double rel_tol = 1e-9);

/// U(r) <= ||grad u||_{L^N} (log 1/r)^{(N-1)/N} / omega^{1/N} for monotone
/// profiles supported in the unit ball.
RadialBoundReport hyperbolic_bound_check(const RadialProfile& u,
                                         const std::vector<double>& radii, int N,
                                         double rel_tol = 1e-9);

/// int_{B_r} |grad u*|^N for the piecewise-linear reconstruction of a profile.
double radial_energy_within(const RadialProfile& profile, double r, int N);

}  // namespace mtlab
