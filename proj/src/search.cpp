#include "mtlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mtlab/conformal.hpp"
#include "mtlab/diagnostics.hpp"
#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/rearrangement.hpp"

namespace mtlab {

namespace {

const TruncatedExpSpec kSharp2 = TruncatedExpSpec::sharp(2);

double functional_or_nan(const GridFunction& u) {
  OverflowInfo info;
  const double v = mt_functional(u, kSharp2, &info);
  return info.overflowed ? std::nan("") : v;
}

// symmetrize |u| and project onto unit discrete energy
bool normalize_state(GridFunction& u) {
  for (auto& v : u.values) v = std::abs(v);
  u = double_symmetrize(u);
  const double e = dirichlet_energy(u, 2);
  if (e <= 0.0) return false;
  const double s = 1.0 / std::sqrt(e);
  for (auto& v : u.values) v *= s;
  return true;
}

// Adjoint of the discrete Dirichlet energy: n = dE/du for the centered /
// one-sided gradient scheme. Needed to project the ascent direction onto the
// tangent space of the unit-energy sphere; stepping along the raw gradient
// stalls as soon as its normal component dominates.
GridFunction energy_gradient(const GridFunction& u) {
  GridFunction n = u;
  std::fill(n.values.begin(), n.values.end(), 0.0);
  const int nx = u.grid.nx, ny = u.grid.ny;
  const double hx = u.grid.hx(), hy = u.grid.hy();
  const double m = u.grid.cell_measure();
  double gx = 0.0, gy = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      gradient_at(u, i, j, gx, gy);
      const double cx = 2.0 * gx * m, cy = 2.0 * gy * m;
      if (i == 0) {
        n.at(1, j) += cx / hx;
        n.at(0, j) -= cx / hx;
      } else if (i == nx - 1) {
        n.at(i, j) += cx / hx;
        n.at(i - 1, j) -= cx / hx;
      } else {
        n.at(i + 1, j) += cx / (2 * hx);
        n.at(i - 1, j) -= cx / (2 * hx);
      }
      if (j == 0) {
        n.at(i, 1) += cy / hy;
        n.at(i, 0) -= cy / hy;
      } else if (j == ny - 1) {
        n.at(i, j) += cy / hy;
        n.at(i, j - 1) -= cy / hy;
      } else {
        n.at(i, j + 1) += cy / (2 * hy);
        n.at(i, j - 1) -= cy / (2 * hy);
      }
    }
  return n;
}

}  // namespace

GridFunction eigenfunction_seed(int k, double L, int nx, int ny) {
  GridFunction u = strip_eigenfunction(k, L, nx, ny);
  const double s = 1.0 / std::sqrt(dirichlet_energy(u, 2));
  for (auto& v : u.values) v *= s;
  return u;
}

GridFunction capped_moser_seed(double R, double L, int nx, int ny) {
  const RadialProfile w = capped_moser(2, R);
  GridFunction u = GridFunction::zeros(DomainSpec::strip(L), nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto y = strip_disc(u.grid.cx(i), u.grid.cy(j));
      u.at(i, j) = w.value(std::hypot(y[0], y[1]));
    }
  const double s = 1.0 / std::sqrt(dirichlet_energy(u, 2));
  for (auto& v : u.values) v *= s;
  return u;
}

SearchState maximize(const GridFunction& seed, const SearchOptions& opts) {
  SearchState st;
  st.iterate = seed;
  if (!normalize_state(st.iterate))
    throw std::invalid_argument("seed has no Dirichlet energy");
  st.value = functional_or_nan(st.iterate);
  if (std::isnan(st.value)) throw std::invalid_argument("seed overflows the functional");
  st.energy = dirichlet_energy(st.iterate, 2);
  st.step = opts.initial_step;

  const double m = st.iterate.grid.cell_measure();
  GridFunction grad = st.iterate;
  bool improved_ever = false;

  for (st.iterations = 0; st.iterations < opts.max_iters; ++st.iterations) {
    // cellwise dPhi/du weighted by cell measure, projected onto the tangent
    // space of the unit-energy sphere
    for (std::size_t n = 0; n < grad.values.size(); ++n) {
      const double u = st.iterate.values[n];
      grad.values[n] = 8.0 * kPi * u * std::exp(4.0 * kPi * u * u) * m;
    }
    const GridFunction normal = energy_gradient(st.iterate);
    double gn = 0.0, nn = 0.0;
    for (std::size_t n = 0; n < grad.values.size(); ++n) {
      gn += grad.values[n] * normal.values[n];
      nn += normal.values[n] * normal.values[n];
    }
    const double mu = nn > 0.0 ? gn / nn : 0.0;
    double gmax = 0.0;
    for (std::size_t n = 0; n < grad.values.size(); ++n) {
      grad.values[n] -= mu * normal.values[n];
      gmax = std::max(gmax, std::abs(grad.values[n]));
    }
    if (gmax == 0.0) break;

    bool accepted = false;
    while (st.step > 1e-14) {
      GridFunction cand = st.iterate;
      const double scale = st.step / gmax;
      for (std::size_t n = 0; n < cand.values.size(); ++n)
        cand.values[n] += scale * grad.values[n];
      if (!normalize_state(cand)) break;
      const double v = functional_or_nan(cand);
      if (std::isnan(v)) {  // functional overflow: back off
        st.step *= opts.backtrack;
        continue;
      }
      if (v > st.value) {
        const double rel = (v - st.value) / std::max(st.value, 1e-300);
        st.iterate = std::move(cand);
        st.value = v;
        st.energy = dirichlet_energy(st.iterate, 2);
        accepted = true;
        improved_ever = true;
        if (opts.keep_log) {
          st.value_log.push_back(st.value);
          st.energy_log.push_back(st.energy);
        }
        st.step = std::min(st.step * 2.0, 1e6);
        if (rel < opts.rel_tol) return st;
        break;
      }
      st.step *= opts.backtrack;
    }
    if (!accepted) {
      st.seed_was_critical = !improved_ever;
      break;
    }
  }
  return st;
}

GridFunction mt_gradient(const GridFunction& u) {
  GridFunction g = u;
  const double m = u.grid.cell_measure();
  for (std::size_t n = 0; n < g.values.size(); ++n) {
    const double v = u.values[n];
    g.values[n] = 8.0 * kPi * v * std::exp(4.0 * kPi * v * v) * m;
  }
  return g;
}

CertifyReport certify(const SearchState& state) {
  CertifyReport rep;
  rep.value = state.value;
  rep.energy = state.energy;

  rep.energy_ok = std::abs(state.energy - 1.0) <= 1e-9;
  rep.value_ok = state.value > 16.0 / kPi;

  bool envelope_ok = false;
  try {
    envelope_ok = envelope_check(state.iterate, kPi * kPi / 4.0).pass;
  } catch (const std::invalid_argument&) {
    envelope_ok = false;
  }
  rep.envelope_ok = envelope_ok;

  // concentration screen: eps-stable Phi-mass fraction of the iterate itself
  const ThetaReport theta = theta_statistic({state.iterate}, 0.1);
  rep.theta = theta.theta;
  rep.theta_ok = theta.theta < 0.95;

  if (!rep.energy_ok) rep.failing = "energy";
  else if (!rep.value_ok) rep.failing = "value";
  else if (!rep.envelope_ok) rep.failing = "envelope";
  else if (!rep.theta_ok) rep.failing = "theta";
  rep.pass = rep.energy_ok && rep.value_ok && rep.envelope_ok && rep.theta_ok;
  return rep;
}

}  // namespace mtlab
