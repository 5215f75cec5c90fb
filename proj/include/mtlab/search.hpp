#pragma once

#include <string>
#include <vector>

#include "mtlab/geometry.hpp"

namespace mtlab {

struct SearchOptions {
  double rel_tol = 1e-9;
  int max_iters = 50000;
  double initial_step = 1.0;
  double backtrack = 0.5;
  bool keep_log = false;
};

struct SearchState {
  GridFunction iterate;
  double value = 0.0;
  double energy = 0.0;
  double step = 0.0;
  int iterations = 0;
  bool seed_was_critical = false;  // no improving step found at the seed
  std::vector<double> value_log;   // per accepted iteration, when requested
  std::vector<double> energy_log;
};

/// Projected gradient ascent for the functional int (e^{4 pi u^2} - 1) on the
/// truncated strip, over the unit-energy symmetric class: cellwise gradient
/// step, double symmetrization, projection to unit discrete energy, and
/// backtracking acceptance. The value sequence is nondecreasing.
SearchState maximize(const GridFunction& seed, const SearchOptions& opts = {});

/// Cellwise gradient of the discrete functional: dPhi/du * cell measure.
GridFunction mt_gradient(const GridFunction& u);

/// Normalized rectangle eigenfunction seed on a strip grid.
GridFunction eigenfunction_seed(int k, double L, int nx, int ny);

/// Transported capped Moser seed (an artificially concentrated state).
GridFunction capped_moser_seed(double R, double L, int nx, int ny);

struct CertifyReport {
  bool pass = false;
  bool energy_ok = false;
  bool value_ok = false;
  bool envelope_ok = false;
  bool theta_ok = false;
  double value = 0.0;
  double energy = 0.0;
  double theta = 0.0;
  std::string failing;
};

/// Certifies a converged state: unit energy, value above the vanishing level
/// 16/pi, envelope bound satisfied, and Phi mass not concentrated in a small
/// ball (theta of the terminal iterate < 0.95, eps-stable).
CertifyReport certify(const SearchState& state);

}  // namespace mtlab
