#include "mtlab/metric_forge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"

namespace mtlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double q_exp(int N) { return static_cast<double>(N) / (N - 1); }

// d/du log truncated_exp(x(u), n) = x'(u) * te(x, n-1)/te(x, n), with the
// ratio formed in log space so it stays finite for any x.
double te_dlog(double x, double xprime, int n_removed) {
  return xprime *
         std::exp(log_truncated_exp(x, n_removed - 1) - log_truncated_exp(x, n_removed));
}
}  // namespace

Nonlinearity nl_power(double p) {
  Nonlinearity n;
  n.name = "power(" + std::to_string(p) + ")";
  n.log_f = [p](double u) { return p * std::log(u); };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [p](double u) { return p / u; };
  return n;
}

Nonlinearity nl_max_power(int N, double p) {
  Nonlinearity n;
  n.name = "max_power(" + std::to_string(N) + "," + std::to_string(p) + ")";
  n.log_f = [N, p](double u) {
    const double lu = std::log(u);
    return std::max(N * lu, p * lu);
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [N, p](double u) { return (u > 1.0 ? p : N) / u; };
  return n;
}

Nonlinearity nl_log_damped(int N, double p) {
  Nonlinearity n;
  n.name = "log_damped(" + std::to_string(N) + "," + std::to_string(p) + ")";
  n.log_f = [N, p](double u) {
    const double lu = std::log(u);
    return std::max(N * lu, p * lu - std::log1p(std::log1p(u)));
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [p](double u) {
    return p / u - 1.0 / ((1.0 + u) * (1.0 + std::log1p(u)));
  };
  return n;
}

Nonlinearity nl_phi_alpha(int N, double alpha) {
  const double q = q_exp(N);
  Nonlinearity n;
  n.name = "phi_alpha(" + std::to_string(N) + "," + std::to_string(alpha) + ")";
  n.log_f = [alpha, q, N](double u) {
    return log_truncated_exp(alpha * std::pow(u, q), N - 1);
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [alpha, q, N](double u) {
    const double x = alpha * std::pow(u, q);
    return te_dlog(x, alpha * q * std::pow(u, q - 1.0), N - 1);
  };
  return n;
}

Nonlinearity nl_phi_alpha_damped(int N, double alpha) {
  Nonlinearity base = nl_phi_alpha(N, alpha);
  Nonlinearity n;
  n.name = "phi_alpha_damped(" + std::to_string(N) + "," + std::to_string(alpha) + ")";
  n.log_f = [b = base.log_f](double u) { return b(u) - std::log1p(u); };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [b = base.dlog](double u) { return b(u) - 1.0 / (1.0 + u); };
  return n;
}

Nonlinearity nl_phi_alpha_boosted(int N, double alpha) {
  Nonlinearity base = nl_phi_alpha(N, alpha);
  Nonlinearity n;
  n.name = "phi_alpha_boosted(" + std::to_string(N) + "," + std::to_string(alpha) + ")";
  n.log_f = [b = base.log_f](double u) { return b(u) + std::log1p(u); };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [b = base.dlog](double u) { return b(u) + 1.0 / (1.0 + u); };
  return n;
}

Nonlinearity nl_exp_fractional(int N, double beta, double q) {
  if (q <= 0 || q >= q_exp(N)) throw std::invalid_argument("need 0 < q < N/(N-1)");
  const int n_removed = static_cast<int>(std::floor(N / q)) + 1;
  Nonlinearity n;
  n.name = "exp_fractional";
  n.log_f = [beta, q, n_removed](double u) {
    return log_truncated_exp(beta * std::pow(u, q), n_removed);
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [beta, q, n_removed](double u) {
    const double x = beta * std::pow(u, q);
    return te_dlog(x, beta * q * std::pow(u, q - 1.0), n_removed);
  };
  return n;
}

Nonlinearity nl_exp_linear(int N, double c) {
  Nonlinearity n;
  n.name = "exp_linear(" + std::to_string(c) + ")";
  n.log_f = [c, N](double u) { return log_truncated_exp(c * u, N); };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [c, N](double u) { return te_dlog(c * u, c, N); };
  return n;
}

Nonlinearity nl_floor_or(int N, double p, bool log_factor) {
  Nonlinearity n;
  n.name = "floor_or(" + std::to_string(p) + (log_factor ? ",log)" : ")");
  n.log_f = [p, log_factor](double u) {
    double grow = -kInf;
    if (log_factor) {
      // the log factor makes the power branch negative below u = 1
      if (u > 1.0) grow = p * std::log(u) + std::log(std::log(u));
    } else if (u > 0.0) {
      grow = p * std::log(u);
    }
    return std::max(u > 0 ? -1.0 / u : -kInf, grow);
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [p, log_factor](double u) {
    double d = p / u;
    if (log_factor) d += 1.0 / (u * std::log(u));
    return d;
  };
  (void)N;
  return n;
}

Nonlinearity nl_floor_or_nlog(int N) { return nl_floor_or(N, N, true); }

Nonlinearity nl_f0(int N) {
  const double q = q_exp(N);
  const double aN = sharp_exponent(N);
  Nonlinearity n;
  n.name = "f0(" + std::to_string(N) + ")";
  n.log_f = [aN, q](double u) {
    return aN * std::pow(u, q) - 2.0 * q * std::log(u);
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [aN, q](double u) {
    return aN * q * std::pow(u, q - 1.0) - 2.0 * q / u;
  };
  return n;
}

Nonlinearity nl_phi_over_power(int N) {
  Nonlinearity base = nl_phi_alpha(N, sharp_exponent(N));
  const double q2 = 2.0 * q_exp(N);
  Nonlinearity n;
  n.name = "phi_over_power(" + std::to_string(N) + ")";
  n.log_f = [b = base.log_f, q2](double u) {
    return b(u) - std::log1p(std::pow(u, q2));
  };
  n.f = [fn = n.log_f](double u) { return std::exp(fn(u)); };
  n.dlog = [b = base.dlog, q2](double u) {
    const double w = std::pow(u, q2);
    return b(u) - q2 * (w / u) / (1.0 + w);
  };
  return n;
}

// ---------------------------------------------------------------------------

double tilde_argument(double log_inv_R, int N) {
  return std::pow(log_inv_R, (N - 1.0) / N) / std::pow(sphere_measure(N), 1.0 / N);
}

double tilde_transform(const Nonlinearity& f, double R, int N) {
  if (R <= 0.0 || R >= 1.0) throw std::domain_error("domain-error: need 0 < R < 1");
  return f.f(tilde_argument(std::log(1.0 / R), N));
}

double tilde_log(const Nonlinearity& f, double log_inv_R, int N) {
  if (log_inv_R <= 0.0) throw std::domain_error("domain-error: need R < 1");
  return f.log_f(tilde_argument(log_inv_R, N));
}

GrowthIndexResult growth_index(const Nonlinearity& f, int N) {
  const double aN = sharp_exponent(N);
  GrowthIndexResult res;
  const double us[3] = {1e2, 1e3, 1e4};
  for (int i = 0; i < 3; ++i) {
    const double s = f.dlog(us[i]) / std::pow(us[i], 1.0 / (N - 1));
    res.samples[i] = N - (N - 1.0) / aN * s;
  }
  res.index = res.samples[2];
  res.converged = std::isfinite(res.index) &&
                  std::abs(res.samples[2] - res.samples[1]) <=
                      0.05 * std::max(1.0, std::abs(res.samples[2]));
  return res;
}

// ---------------------------------------------------------------------------

double BumpMetricSpec::R(std::size_t k) const { return std::exp(-rows.at(k).log_inv_R); }

double BumpMetricSpec::amplitude(std::size_t k) const {
  return std::exp(rows.at(k).log_amplitude);
}

double BumpMetricSpec::zeta(double y1, double y2) const {
  double total = 1.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double Rk = R(k);
    if (Rk == 0.0) continue;  // bump underflowed below any representable cell
    const Point pre = mobius_apply(MobiusMap::axis(-rows[k].center), Point{y1, y2});
    const double d = std::hypot(pre[0], pre[1]) / Rk;
    if (d >= 1.0) continue;
    total += amplitude(k) * bump_beta(d);
  }
  return total;
}

std::string BumpMetricSpec::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "format mtlab-bump-metric-1\n";
  os << "N " << N << "\n";
  os << "K " << rows.size() << "\n";
  os << "case " << (case_tag.empty() ? "-" : case_tag) << "\n";
  os << "schedule " << (schedule.empty() ? "-" : schedule) << "\n";
  for (std::size_t k = 0; k < rows.size(); ++k)
    os << "row " << k + 1 << " " << rows[k].center << " " << rows[k].log_inv_R
       << " " << rows[k].log_amplitude << "\n";
  return os.str();
}

BumpMetricSpec BumpMetricSpec::parse(const std::string& text) {
  std::istringstream is(text);
  std::string key;
  BumpMetricSpec spec;
  std::size_t expected = 0;
  while (is >> key) {
    if (key == "format") {
      std::string v;
      is >> v;
      if (v != "mtlab-bump-metric-1")
        throw std::invalid_argument("unknown metric format: " + v);
    } else if (key == "N") {
      is >> spec.N;
    } else if (key == "K") {
      is >> expected;
    } else if (key == "case") {
      is >> spec.case_tag;
    } else if (key == "schedule") {
      is >> spec.schedule;
    } else if (key == "row") {
      std::size_t idx;
      BumpRow row;
      is >> idx >> row.center >> row.log_inv_R >> row.log_amplitude;
      spec.rows.push_back(row);
    } else {
      throw std::invalid_argument("unknown key in metric spec: " + key);
    }
  }
  if (expected != spec.rows.size())
    throw std::invalid_argument("metric spec row count mismatch");
  return spec;
}

std::vector<double> separation_centers(const std::vector<double>& log_inv_R) {
  std::vector<double> centers;
  centers.reserve(log_inv_R.size());
  double t = 0.0, r_prev = 0.0;
  for (double L : log_inv_R) {
    const double r = std::exp(-L);
    t = 1.01 * (t + std::atanh(r_prev) + std::atanh(r));
    centers.push_back(std::tanh(t));
    r_prev = r;
  }
  return centers;
}

namespace {

bool stabilized(const std::vector<double>& terms) {
  if (terms.size() < 6) return false;
  double total = 0.0;
  for (double t : terms) total += t;
  double tail = 0.0;
  for (std::size_t i = terms.size() - 5; i < terms.size(); ++i) tail += terms[i];
  return tail <= 1e-3 * total;
}

double upper_term(const Nonlinearity& f1, const Nonlinearity& f2, int N, double L) {
  return std::exp(0.5 * (tilde_log(f1, L, N) - tilde_log(f2, L, N)));
}

}  // namespace

BumpMetricSpec build_metric(const Nonlinearity& f1, const Nonlinearity& f2, int N,
                            int K, const std::string& tag) {
  if (K < 1) throw std::invalid_argument("need K >= 1");
  BumpMetricSpec spec;
  spec.N = N;
  spec.case_tag = tag.empty() ? f1.name + "/" + f2.name : tag;

  const GrowthIndexResult gi = growth_index(f1, N);
  if (std::abs(gi.index) <= 0.02) {
    // comparison-function regime: a_k = k, R_k = e^{-k^3}
    spec.schedule = "case7";
    for (int k = 1; k <= K; ++k) {
      BumpRow row;
      row.log_inv_R = std::pow(static_cast<double>(k), 3);
      row.log_amplitude = std::log(static_cast<double>(k));
      spec.rows.push_back(row);
    }
  } else {
    // condition 2: the ratio f1/f2 has to decay
    {
      const double us[4] = {10.0, 1e2, 1e3, 1e4};
      double prev = kInf;
      for (double u : us) {
        const double d = f1.log_f(u) - f2.log_f(u);
        if (d >= prev) throw std::invalid_argument("condition-2-violated");
        prev = d;
      }
      if (f1.log_f(1e4) - f2.log_f(1e4) > f1.log_f(10.0) - f2.log_f(10.0) - 0.1)
        throw std::invalid_argument("condition-2-violated");
    }

    const double ln2 = std::log(2.0);
    std::vector<double> Ls(K);
    std::vector<double> terms(K);
    auto fill = [&](auto&& schedule_L) {
      for (int k = 1; k <= K; ++k) {
        Ls[k - 1] = schedule_L(k);
        terms[k - 1] = upper_term(f1, f2, N, Ls[k - 1]);
      }
    };
    fill([&](int k) { return k * ln2; });
    spec.schedule = "geometric";
    if (!stabilized(terms)) {
      fill([&](int k) { return static_cast<double>(k) * k; });
      spec.schedule = "quadratic";
    }
    if (!stabilized(terms)) {
      // Solve log(1/R_k) for geometrically decaying upper terms. Beyond
      // L ~ 1e13 the log-ratio tilde_log(f1) - tilde_log(f2) is absorbed by
      // double rounding (the individual logs grow like alpha u^{N/(N-1)}), so
      // the decay rate is calibrated to what the safe zone can reach.
      spec.schedule = "targeted";
      const double L_safe = 1e13;
      const int n_grid = 400;
      std::vector<double> grid_L(n_grid), grid_t(n_grid);
      for (int i = 0; i < n_grid; ++i) {
        grid_L[i] = ln2 * std::pow(L_safe / ln2, static_cast<double>(i) / (n_grid - 1));
        grid_t[i] = upper_term(f1, f2, N, grid_L[i]);
      }
      const double t_start = grid_t.front();
      double t_min = t_start;
      for (double t : grid_t) t_min = std::min(t_min, t);
      t_min = std::max(t_min * 1.05, 1e-8);
      if (t_min >= t_start)
        throw std::invalid_argument(
            "condition-2-violated: ratio does not decay in the resolvable range");
      double prev_L = ln2;
      for (int k = 1; k <= K; ++k) {
        const double target =
            t_start * std::pow(t_min / t_start, static_cast<double>(k) / K);
        // first grid crossing from the left, then bisection inside it
        int hit = n_grid - 1;
        for (int i = 0; i < n_grid; ++i)
          if (grid_L[i] > prev_L && grid_t[i] <= target) {
            hit = i;
            break;
          }
        double lo = std::max(prev_L * (1.0 + 1e-12),
                             hit > 0 ? grid_L[hit - 1] : ln2);
        double hi = std::max(grid_L[hit], lo * (1.0 + 1e-12));
        for (int it = 0; it < 100; ++it) {
          const double mid = std::sqrt(lo * hi);
          (upper_term(f1, f2, N, mid) > target ? lo : hi) = mid;
        }
        Ls[k - 1] = hi;
        terms[k - 1] = upper_term(f1, f2, N, hi);
        prev_L = hi;
      }
    }
    for (int k = 0; k < K; ++k) {
      BumpRow row;
      row.log_inv_R = Ls[k];
      row.log_amplitude =
          N * Ls[k] - 0.5 * (tilde_log(f1, Ls[k], N) + tilde_log(f2, Ls[k], N));
      spec.rows.push_back(row);
    }
  }

  std::vector<double> Lvals;
  for (const auto& r : spec.rows) Lvals.push_back(r.log_inv_R);
  const auto centers = separation_centers(Lvals);
  for (std::size_t k = 0; k < spec.rows.size(); ++k) spec.rows[k].center = centers[k];
  return spec;
}

std::array<double, 2> bound_terms(const BumpMetricSpec& spec, const Nonlinearity& f1,
                                  const Nonlinearity& f2, int N, std::size_t k) {
  if (k < 1 || k > spec.rows.size()) throw std::out_of_range("bump index out of range");
  const BumpRow& row = spec.rows[k - 1];
  const double base = row.log_amplitude - N * row.log_inv_R;
  const double upper = std::exp(base + tilde_log(f1, row.log_inv_R, N));
  const double lower = sphere_measure(N) / (2.0 * N) *
                       std::exp(base + tilde_log(f2, row.log_inv_R, N));
  return {upper, lower};
}

CappedMoserCheck capped_moser_energy_check(const BumpMetricSpec& spec, std::size_t k,
                                           int N, int grid_n) {
  if (k < 1 || k > spec.rows.size()) throw std::out_of_range("bump index out of range");
  const BumpRow& row = spec.rows[k - 1];
  const RadialProfile w = capped_moser_from_log(N, row.log_inv_R);

  CappedMoserCheck check;
  check.value_at_zero = w.value(0.0);
  check.expected_value_at_zero = std::pow(row.log_inv_R, (N - 1.0) / N) /
                                 std::pow(sphere_measure(N), 1.0 / N);
  check.closed_form_energy = dirichlet_energy(w, N);
  check.support_radius = w.support_radius();

  const MobiusMap map = MobiusMap::axis(row.center);
  const BallImage img = mobius_ball_image(map, 0.5);
  // plateau radius in the image, against the grid cell size
  const double c2 = row.center * row.center;
  const double plateau_img = 0.5 * std::exp(-row.log_inv_R) * (1.0 - c2);
  check.resolvable = plateau_img >= 3.0 * (2.1 * img.radius / grid_n);
  GridFunction g;
  g.domain = DomainSpec::disc();
  g.grid.nx = g.grid.ny = grid_n;
  g.grid.xlo = img.center[0] - 1.05 * img.radius;
  g.grid.xhi = img.center[0] + 1.05 * img.radius;
  g.grid.ylo = img.center[1] - 1.05 * img.radius;
  g.grid.yhi = img.center[1] + 1.05 * img.radius;
  g.values.assign(static_cast<std::size_t>(grid_n) * grid_n, 0.0);
  const MobiusMap inv = MobiusMap::axis(-row.center);
  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      const Point pre = mobius_apply(inv, Point{g.grid.cx(i), g.grid.cy(j)});
      g.at(i, j) = w.value(std::hypot(pre[0], pre[1]));
    }
  check.transported_energy = dirichlet_energy(g, N);
  return check;
}

CasePreset case_preset(int case_id, int N, double p, double alpha) {
  if (case_id < 1 || case_id > 7) throw std::out_of_range("case must be in 1..7");
  if (p <= N) p = N + 1.0;
  const double aN = sharp_exponent(N);
  if (alpha <= 0.0 || alpha >= aN) alpha = 0.5 * aN;
  CasePreset preset;
  preset.id = case_id;
  switch (case_id) {
    case 1:
      preset.f1 = nl_power(N);
      preset.f2 = nl_floor_or_nlog(N);
      break;
    case 2:
      preset.f1 = nl_log_damped(N, p);
      preset.f2 = nl_floor_or(N, p, false);
      break;
    case 3:
      preset.f1 = nl_max_power(N, p);
      preset.f2 = nl_floor_or(N, p, true);
      break;
    case 4:
      preset.f1 = nl_exp_linear(N, 1.0);
      preset.f2 = nl_exp_linear(N, 2.0);
      break;
    case 5:
      preset.f1 = nl_phi_alpha_damped(N, alpha);
      preset.f2 = nl_phi_alpha(N, alpha);
      break;
    case 6:
      preset.f1 = nl_phi_alpha(N, alpha);
      preset.f2 = nl_phi_alpha_boosted(N, alpha);
      break;
    case 7:
      preset.f1 = nl_phi_over_power(N);
      preset.f2 = nl_f0(N);  // comparison function
      break;
  }
  return preset;
}

std::vector<double> poincare_collapse_ratios(
    const std::function<double(double, double)>& zeta, const RadialProfile& base,
    const std::vector<double>& centers, int N, int nr, int ntheta) {
  const double denom = dirichlet_energy(base, N);
  if (denom <= 0) throw std::invalid_argument("base profile has no energy");
  const double Rmax = std::min(base.support_radius(), 0.5);
  std::vector<double> ratios;
  ratios.reserve(centers.size());
  for (double c : centers) {
    const MobiusMap map = MobiusMap::axis(c);
    const double dr = Rmax / nr;
    const double dth = 2.0 * kPi / ntheta;
    double numer = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = (i + 0.5) * dr;
      const double uN = std::pow(base.value(r), N);
      if (uN == 0.0) continue;
      const double hyp = std::pow(2.0 / (1.0 - r * r), N);
      double ring = 0.0;
      for (int j = 0; j < ntheta; ++j) {
        const double th = (j + 0.5) * dth;
        const Point y = mobius_apply(map, Point{r * std::cos(th), r * std::sin(th)});
        ring += std::pow(zeta(y[0], y[1]), 0.5 * N);
      }
      numer += uN * hyp * ring * r * dr * dth;
    }
    ratios.push_back(numer / denom);
  }
  return ratios;
}

}  // namespace mtlab
