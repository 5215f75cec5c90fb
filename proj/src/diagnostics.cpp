#include "mtlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mtlab/rearrangement.hpp"

namespace mtlab {

MassProfile mass_profile(const GridFunction& u, double eps, double window_R,
                         const TruncatedExpSpec& spec) {
  MassProfile p;
  const double m = u.grid.cell_measure();
  double gx = 0.0, gy = 0.0;
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) {
      const double x = u.grid.cx(i), y = u.grid.cy(j);
      gradient_at(u, i, j, gx, gy);
      const double e = (gx * gx + gy * gy) * m;  // N = 2 energy density
      const double phi = phi_eval(spec, u.at(i, j)) * m;
      p.energy_total += e;
      p.mt_total += phi;
      if (x * x + y * y < eps * eps) {
        p.energy_ball += e;
        p.mt_ball += phi;
      }
      if (std::abs(x) < window_R) p.mt_window += phi;
    }
  return p;
}

namespace {

double ball_mass(const GridFunction& u, double eps, const TruncatedExpSpec& spec) {
  const double m = u.grid.cell_measure();
  double total = 0.0;
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) {
      const double x = u.grid.cx(i), y = u.grid.cy(j);
      if (x * x + y * y < eps * eps) total += phi_eval(spec, u.at(i, j)) * m;
    }
  return total;
}

}  // namespace

ThetaReport theta_statistic(const std::vector<GridFunction>& family, double eps,
                            double s_ref) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const TruncatedExpSpec spec = TruncatedExpSpec::sharp(2);
  ThetaReport rep;
  if (s_ref > 0.0) {
    rep.s_ref = s_ref;
  } else {
    for (const auto& u : family)
      rep.s_ref = std::max(rep.s_ref, grid_integral(u, [&](double v) {
                             return phi_eval(spec, v);
                           }));
  }
  const GridFunction& last = family.back();
  rep.theta = ball_mass(last, eps, spec) / rep.s_ref;
  rep.theta_half = ball_mass(last, 0.5 * eps, spec) / rep.s_ref;
  rep.stabilized = std::abs(rep.theta - rep.theta_half) <= 0.05;
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Concentrating: return "concentrating";
    case Verdict::Vanishing: return "vanishing";
    case Verdict::Dichotomy: return "dichotomy";
    case Verdict::Compact: return "compact";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

Classification classify(const std::vector<GridFunction>& family,
                        const ClassifyOptions& opts) {
  if (family.size() < 4) throw std::invalid_argument("need at least 4 members");
  const TruncatedExpSpec spec = TruncatedExpSpec::sharp(2);
  const double window_R =
      opts.window_R > 0 ? opts.window_R : 0.5 * family.back().grid.xhi;

  Classification cls;
  double s_ref = 0.0;
  for (const auto& u : family) {
    cls.evidence.push_back(mass_profile(u, opts.eps, window_R, spec));
    s_ref = std::max(s_ref, cls.evidence.back().mt_total);
  }
  const MassProfile& lastp = cls.evidence.back();
  cls.theta = lastp.mt_ball / s_ref;

  const double theta_half =
      ball_mass(family.back(), 0.5 * opts.eps, spec) / s_ref;
  const bool stabilized = std::abs(cls.theta - theta_half) <= 0.05;

  const double window_frac = lastp.mt_window / std::max(lastp.mt_total, 1e-300);
  const double escape_frac = 1.0 - window_frac;

  if (cls.theta > opts.hi) {
    cls.verdict = Verdict::Concentrating;
    // argmax-energy cell of the last member
    const GridFunction& u = family.back();
    double best = -1.0, gx = 0.0, gy = 0.0;
    for (int j = 0; j < u.grid.ny; ++j)
      for (int i = 0; i < u.grid.nx; ++i) {
        gradient_at(u, i, j, gx, gy);
        const double e = gx * gx + gy * gy;
        if (e > best) {
          best = e;
          cls.point = {u.grid.cx(i), u.grid.cy(j)};
        }
      }
  } else if (window_frac < opts.lo) {
    cls.verdict = Verdict::Vanishing;
  } else if (cls.theta >= opts.lo && cls.theta <= opts.hi && escape_frac >= opts.lo) {
    cls.verdict = stabilized ? Verdict::Dichotomy : Verdict::Undetermined;
  } else {
    cls.verdict = Verdict::Compact;
  }
  return cls;
}

EnvelopeReport envelope_check(const GridFunction& u, double lambda1, double eps) {
  if (lambda1 <= 0) throw std::invalid_argument("lambda1 must be positive");
  if (!in_symmetric_class(u, 1e-9))
    throw std::invalid_argument("class-violation: not in the symmetric class");
  const double c1 = std::pow(1.0 / std::sqrt(lambda1) + 1.0, 4);
  EnvelopeReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) {
      const double x1 = u.grid.cx(i), x2 = u.grid.cy(j);
      if (x1 * x1 + x2 * x2 <= eps * eps) continue;
      const double bound =
          std::abs(x1) <= 1.0 ? c1 / (x2 * x2) : 4.0 / (x1 * x1);
      const double v4 = std::pow(u.at(i, j), 4);
      rep.worst_margin = std::max(rep.worst_margin, v4 - bound);
      ++rep.checked;
    }
  rep.pass = rep.worst_margin <= 0.0;
  return rep;
}

RemainderReport remainder_compactness_check(const std::vector<GridFunction>& family,
                                            const GridFunction& limit, double eps,
                                            double R, double tol) {
  RemainderReport rep;
  auto tail = [](double v) {
    const double x = 4.0 * kPi * v * v;
    return truncated_exp(x, 2);  // e^x - 1 - x
  };
  for (const auto& u : family) {
    const double m = u.grid.cell_measure();
    double l1 = 0.0;
    for (int j = 0; j < u.grid.ny; ++j)
      for (int i = 0; i < u.grid.nx; ++i) {
        const double x = u.grid.cx(i), y = u.grid.cy(j);
        if (x * x + y * y <= eps * eps || std::abs(x) >= R) continue;
        l1 += std::abs(tail(u.at(i, j)) - tail(limit.sample(x, y))) * m;
      }
    rep.l1.push_back(l1);
  }
  // PASS: the trend came down below tolerance, or was there to begin with.
  rep.pass = rep.l1.back() <= tol ||
             (rep.l1.back() < 0.5 * rep.l1.front() && rep.l1.back() <= 10 * tol);
  return rep;
}

}  // namespace mtlab
