// Experiment runner: reproduces the pinned numbers with deterministic CSV
// output. Exit codes: 0 pass, 1 assertion failure, 2 configuration error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mtlab/conformal.hpp"
#include "mtlab/diagnostics.hpp"
#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/geometry.hpp"
#include "mtlab/metric_forge.hpp"
#include "mtlab/rearrangement.hpp"
#include "mtlab/search.hpp"
#include "mtlab/spectral.hpp"

using namespace mtlab;

namespace {

struct Csv {
  std::ostringstream out;

  explicit Csv(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << header[i] << (i + 1 < header.size() ? "," : "\n");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }
  static std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
  }
};

struct Config {
  std::string experiment;
  int N = 2;
  int k = 2;
  int k_hi = -1;  // range end when >= k
  std::string alpha = "sharp";
  std::string grid = "256x128";
  double L = 8.0;
  int case_id = 1;
  unsigned seed = 1;
  std::string out_path;
  std::string metric_out;
  double tol = 1e-10;
  int iters = 2000;
};

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid expects WxH");
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

double alpha_value(const Config& cfg) {
  if (cfg.alpha == "sharp") return sharp_exponent(cfg.N);
  return std::stod(cfg.alpha);
}

int finish(const Config& cfg, const Csv& csv, bool ok) {
  if (cfg.out_path.empty()) {
    std::cout << csv.out.str();
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      std::cerr << "cannot write " << cfg.out_path << "\n";
      return 2;
    }
    f << csv.out.str();
  }
  return ok ? 0 : 1;
}

int run_constants(const Config& cfg) {
  Csv csv({"N", "omega", "alpha_sharp"});
  bool ok = true;
  csv.row({std::to_string(cfg.N), Csv::num(sphere_measure(cfg.N)),
           Csv::num(sharp_exponent(cfg.N))});
  return finish(cfg, csv, ok);
}

int run_moser(const Config& cfg) {
  Csv csv({"N", "k", "energy", "lN_mass", "mt_value", "status"});
  const int k_hi = cfg.k_hi >= cfg.k ? cfg.k_hi : cfg.k;
  const TruncatedExpSpec spec{cfg.N, alpha_value(cfg), cfg.N - 1};
  bool ok = true;
  for (int k = cfg.k; k <= k_hi; ++k) {
    const RadialProfile u = moser(cfg.N, k);
    const double energy = dirichlet_energy(u, cfg.N);
    const double mass = radial_integral(
        u, [&](double t) { return std::pow(std::abs(t), cfg.N); }, cfg.N);
    OverflowInfo info;
    const double mt = mt_functional(u, spec, &info);
    const bool row_ok = std::abs(energy - 1.0) <= 1e-12;
    ok = ok && row_ok;
    csv.row({std::to_string(cfg.N), std::to_string(k), Csv::num(energy),
             Csv::num(mass), info.overflowed ? "inf" : Csv::num(mt),
             row_ok ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_strip_bound(const Config& cfg) {
  Csv csv({"k", "jensen_bound", "vanishing_level", "status"});
  const int k_hi = cfg.k_hi >= cfg.k ? cfg.k_hi : cfg.k;
  bool ok = true;
  for (int k = cfg.k; k <= k_hi; ++k) {
    const double bound = jensen_lower_bound(k);
    const bool row_ok = k >= 2 ? bound > 16.0 / kPi : true;
    ok = ok && row_ok;
    csv.row({std::to_string(k), Csv::num(bound), Csv::num(16.0 / kPi),
             row_ok ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_phi(const Config& cfg) {
  Csv csv({"N", "u", "phi", "tail_ratio", "status"});
  const TruncatedExpSpec spec{cfg.N, alpha_value(cfg), cfg.N - 1};
  bool ok = true;
  for (int i = 0; i <= 40; ++i) {
    const double u = std::pow(10.0, -4.0 + 4.5 * i / 40.0);
    const double phi = phi_eval(spec, u);
    const auto tb = tail_bound_check(cfg.N, {u});
    ok = ok && tb.pass && phi >= 0.0;
    csv.row({std::to_string(cfg.N), Csv::num(u), Csv::num(phi),
             Csv::num(tb.worst_ratio), tb.pass ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_rearrange(const Config& cfg) {
  const auto [nx, ny] = parse_grid(cfg.grid);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Csv csv({"trial", "equimeasurable", "ps_margin_frac", "status"});
  bool ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    GridFunction u = GridFunction::zeros(DomainSpec::rectangle(1), nx, ny);
    for (auto& v : u.values) v = dist(rng);
    const RadialProfile star = schwarz(u, 2);
    bool equi = true;
    for (std::size_t n = 0; n < u.values.size(); n += 499)
      equi = equi && distribution(star, u.values[n], 2) == distribution(u, u.values[n]);
    const auto ps = polya_szego_check(u, star, 2);
    const double margin = std::max(0.0, ps.diff) / ps.energy_original;
    ok = ok && equi && ps.pass;
    csv.row({std::to_string(trial), equi ? "1" : "0", Csv::num(margin),
             (equi && ps.pass) ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_lemmas(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Csv csv({"check", "worst", "status"});
  bool ok = true;

  double worst = 0.0;
  bool pass = true;
  for (int k = 1; k <= 4; ++k) {
    const auto rep = radial_bound_check(moser(cfg.N, k), {0.05, 0.3, 1.0, 2.0}, cfg.N);
    worst = std::max(worst, rep.worst_excess);
    pass = pass && rep.pass;
  }
  ok = ok && pass;
  csv.row({"radial_bound", Csv::num(worst), pass ? "PASS" : "FAIL"});

  worst = 0.0;
  pass = true;
  for (int k = 1; k <= 4; ++k) {
    const auto rep = hyperbolic_bound_check(moser(cfg.N, k).rescaled(k),
                                            {0.01, 0.1, 0.5, 0.9}, cfg.N);
    worst = std::max(worst, rep.worst_excess);
    pass = pass && rep.pass;
  }
  ok = ok && pass;
  csv.row({"hyperbolic_bound", Csv::num(worst), pass ? "PASS" : "FAIL"});

  GridFunction u = GridFunction::zeros(DomainSpec::rectangle(2), 128, 64);
  for (auto& v : u.values) v = dist(rng);
  const auto lev = level_energy_check(u, {0.2, 0.5, 1.0}, 2);
  ok = ok && lev.pass;
  csv.row({"level_energy", Csv::num(lev.rows.back().lhs - lev.rows.back().rhs),
           lev.pass ? "PASS" : "FAIL"});

  GridFunction s = double_symmetrize(u);
  const double e = dirichlet_energy(s, 2);
  for (auto& v : s.values) v /= std::sqrt(e);
  const auto dec = decay_bound_check(s, rectangle_lambda1(2), {1.0, 1.8}, 2, 0.05);
  ok = ok && dec.pass;
  csv.row({"decay_bound", Csv::num(dec.rows.back().lhs - dec.rows.back().rhs),
           dec.pass ? "PASS" : "FAIL"});
  return finish(cfg, csv, ok);
}

int run_mobius(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  Csv csv({"trial", "inverse_err", "conformal_err", "status"});
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    Point a{dist(rng), dist(rng) * 0.5};
    MobiusMap phi(a);
    MobiusMap inv(Point{-a[0], -a[1]});
    double inv_err = 0.0, conf_err = 0.0;
    const double h = 1e-6;
    for (int s = 0; s < 10; ++s) {
      Point x{dist(rng), dist(rng)};
      const Point back = mobius_apply(inv, mobius_apply(phi, x));
      inv_err = std::max(inv_err, std::hypot(back[0] - x[0], back[1] - x[1]));
      const Point fpx = mobius_apply(phi, Point{x[0] + h, x[1]});
      const Point fmx = mobius_apply(phi, Point{x[0] - h, x[1]});
      const Point fpy = mobius_apply(phi, Point{x[0], x[1] + h});
      const Point fmy = mobius_apply(phi, Point{x[0], x[1] - h});
      const double j00 = (fpx[0] - fmx[0]) / (2 * h), j01 = (fpy[0] - fmy[0]) / (2 * h);
      const double j10 = (fpx[1] - fmx[1]) / (2 * h), j11 = (fpy[1] - fmy[1]) / (2 * h);
      const double c0 = j00 * j00 + j10 * j10, c1 = j01 * j01 + j11 * j11;
      conf_err = std::max(conf_err, std::abs(c0 - c1) / std::max(1.0, c0));
    }
    const bool row_ok = inv_err < 1e-10 && conf_err < 1e-6;
    ok = ok && row_ok;
    csv.row({std::to_string(trial), Csv::num(inv_err), Csv::num(conf_err),
             row_ok ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_disc_strip(const Config& cfg) {
  const auto [nx, ny] = parse_grid(cfg.grid);
  Csv csv({"quantity", "strip_side", "disc_side", "rel_err", "status"});
  GridFunction u = smooth_bump(DomainSpec::strip(4), nx, ny, 0.0, 0.0, 0.8, 0.55);
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  const double e_strip = dirichlet_energy(u, 2);
  const double mt_strip = mt_functional(u, s2);
  GridFunction v = transport_strip_to_disc(u, nx);
  const double e_disc = dirichlet_energy(v, 2);
  double mt_disc = 0.0;
  for (int j = 0; j < v.grid.ny; ++j)
    for (int i = 0; i < v.grid.nx; ++i) {
      const double val = v.at(i, j);
      if (val == 0.0) continue;
      mt_disc += phi_eval(s2, val) * disc_strip_jacobian(v.grid.cx(i), v.grid.cy(j)) *
                 v.grid.cell_measure();
    }
  const double e_err = std::abs(e_disc / e_strip - 1.0);
  const double mt_err = std::abs(mt_disc / mt_strip - 1.0);
  const bool ok = e_err < 0.02 && mt_err < 0.03;
  csv.row({"dirichlet_energy", Csv::num(e_strip), Csv::num(e_disc), Csv::num(e_err),
           e_err < 0.02 ? "PASS" : "FAIL"});
  csv.row({"mt_functional", Csv::num(mt_strip), Csv::num(mt_disc), Csv::num(mt_err),
           mt_err < 0.03 ? "PASS" : "FAIL"});
  return finish(cfg, csv, ok);
}

int run_counterexample(const Config& cfg) {
  const auto preset = case_preset(cfg.case_id, cfg.N);
  const int K = cfg.k_hi >= cfg.k ? cfg.k_hi : 20;
  const auto spec = build_metric(preset.f1, preset.f2, cfg.N, K,
                                 "case" + std::to_string(cfg.case_id));
  if (!cfg.metric_out.empty()) {
    std::ofstream f(cfg.metric_out);
    if (!f) {
      std::cerr << "cannot write " << cfg.metric_out << "\n";
      return 2;
    }
    f << spec.serialize();
  }
  Csv csv({"k", "center", "log_inv_R", "log_amplitude", "upper_term", "lower_term"});
  bool ok = true;
  double prev_up = 1e300, prev_lo = 0.0;
  for (std::size_t k = 1; k <= spec.rows.size(); ++k) {
    const auto& row = spec.rows[k - 1];
    double up = 0.0, lo = 0.0;
    if (cfg.case_id == 7) {
      up = std::exp(row.log_amplitude) / row.log_inv_R;  // series term a_k/log(1/R_k)
      lo = 0.0;
    } else {
      const auto terms = bound_terms(spec, preset.f1, preset.f2, cfg.N, k);
      up = terms[0];
      lo = terms[1];
      if (!(up < prev_up && lo > prev_lo)) ok = false;
      prev_up = up;
      prev_lo = lo;
    }
    csv.row({std::to_string(k), Csv::num(row.center), Csv::num(row.log_inv_R),
             Csv::num(row.log_amplitude), Csv::num(up), Csv::num(lo)});
  }
  return finish(cfg, csv, ok);
}

int run_spectral(const Config& cfg) {
  const auto [nx, ny] = parse_grid(cfg.grid);
  const int k_hi = cfg.k_hi >= cfg.k ? cfg.k_hi : cfg.k;
  Csv csv({"k", "lambda1_numeric", "lambda1_closed", "rel_err", "iterations", "status"});
  bool ok = true;
  for (int k = cfg.k; k <= k_hi; ++k) {
    const auto res = lambda1_numeric(k, nx, ny, cfg.tol);
    const double closed = rectangle_lambda1(k);
    const double rel = std::abs(res.lambda1 / closed - 1.0);
    const bool row_ok = rel < 5e-3;
    ok = ok && row_ok;
    csv.row({std::to_string(k), Csv::num(res.lambda1), Csv::num(closed), Csv::num(rel),
             std::to_string(res.iterations), row_ok ? "PASS" : "FAIL"});
  }
  return finish(cfg, csv, ok);
}

int run_trichotomy(const Config& cfg) {
  Csv csv({"family", "verdict", "theta", "status"});
  bool ok = true;

  GridFunction base = smooth_bump(DomainSpec::strip(8), 512, 64, 0.0, 0.0, 0.7, 0.8);
  std::vector<GridFunction> vanish;
  for (int k = 2; k <= 6; ++k)
    vanish.push_back(vanishing_family_member(base, static_cast<double>(k)));
  auto cls = classify(vanish);
  ok = ok && cls.verdict == Verdict::Vanishing;
  csv.row({"translated", to_string(cls.verdict), Csv::num(cls.theta),
           cls.verdict == Verdict::Vanishing ? "PASS" : "FAIL"});

  GridFunction wide = smooth_bump(DomainSpec::strip(8), 512, 64, 0.0, 0.0, 1.2, 0.6);
  cls = classify({wide, wide, wide, wide});
  ok = ok && cls.verdict == Verdict::Compact;
  csv.row({"constant", to_string(cls.verdict), Csv::num(cls.theta),
           cls.verdict == Verdict::Compact ? "PASS" : "FAIL"});

  std::vector<GridFunction> conc;
  for (double L : {2.0, 3.0, 4.0, 5.0})
    conc.push_back(capped_moser_seed(std::exp(-L), 2.0, 1024, 1024));
  ClassifyOptions copts;
  copts.eps = 0.25;
  cls = classify(conc, copts);
  ok = ok && cls.verdict == Verdict::Concentrating;
  csv.row({"transported_moser", to_string(cls.verdict), Csv::num(cls.theta),
           cls.verdict == Verdict::Concentrating ? "PASS" : "FAIL"});

  GridFunction stay = smooth_bump(DomainSpec::strip(4), 1024, 256, 0.0, 0.0, 0.04, 1.0);
  std::vector<GridFunction> mix;
  for (double k : {2.2, 2.5, 2.8, 3.1}) {
    GridFunction v = stay;
    GridFunction esc = vanishing_family_member(stay, k);
    for (std::size_t n = 0; n < v.values.size(); ++n)
      v.values[n] = 0.5 * v.values[n] + 0.5 * esc.values[n];
    mix.push_back(v);
  }
  cls = classify(mix);
  const bool mix_ok = cls.verdict == Verdict::Dichotomy && std::abs(cls.theta - 0.5) <= 0.05;
  ok = ok && mix_ok;
  csv.row({"convex_mix", to_string(cls.verdict), Csv::num(cls.theta),
           mix_ok ? "PASS" : "FAIL"});
  return finish(cfg, csv, ok);
}

int run_extremal(const Config& cfg) {
  const auto [nx, ny] = parse_grid(cfg.grid);
  SearchOptions opts;
  opts.max_iters = cfg.iters;
  opts.rel_tol = 1e-9;
  opts.keep_log = true;
  const SearchState st = maximize(eigenfunction_seed(cfg.k, cfg.L, nx, ny), opts);
  const CertifyReport rep = certify(st);
  Csv csv({"iterations", "value", "energy", "theta", "certified", "status"});
  const bool ok = rep.pass && st.value > 16.0 / kPi;
  csv.row({std::to_string(st.iterations), Csv::num(st.value), Csv::num(st.energy),
           Csv::num(rep.theta), rep.pass ? "1" : "0", ok ? "PASS" : "FAIL"});
  return finish(cfg, csv, ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moser-Trudinger numerical laboratory"};
  app.set_config("--config", "", "key=value config file; flags override");

  Config cfg;
  app.add_option("--experiment", cfg.experiment,
                 "constants | moser | strip-bound | phi | rearrange | lemmas | "
                 "mobius | disc-strip | counterexample | spectral | trichotomy | "
                 "extremal")
      ->required();
  app.add_option("--N", cfg.N, "dimension")->check(CLI::Range(2, 6));
  app.add_option("--k", cfg.k, "index (or range start)");
  app.add_option("--k-range", cfg.k_hi, "range end (inclusive)");
  app.add_option("--alpha", cfg.alpha, "sharp or a numeric exponent");
  app.add_option("--grid", cfg.grid, "WxH");
  app.add_option("--L", cfg.L, "strip truncation");
  app.add_option("--case", cfg.case_id, "counterexample case")->check(CLI::Range(1, 7));
  app.add_option("--seed", cfg.seed, "rng seed for randomized checks");
  app.add_option("--out", cfg.out_path, "CSV output path (default stdout)");
  app.add_option("--metric-out", cfg.metric_out, "write the bump metric spec here");
  app.add_option("--tol", cfg.tol, "solver tolerance");
  app.add_option("--iters", cfg.iters, "iteration cap for the extremal search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.experiment == "constants") return run_constants(cfg);
    if (cfg.experiment == "moser") return run_moser(cfg);
    if (cfg.experiment == "strip-bound") return run_strip_bound(cfg);
    if (cfg.experiment == "phi") return run_phi(cfg);
    if (cfg.experiment == "rearrange") return run_rearrange(cfg);
    if (cfg.experiment == "lemmas") return run_lemmas(cfg);
    if (cfg.experiment == "mobius") return run_mobius(cfg);
    if (cfg.experiment == "disc-strip") return run_disc_strip(cfg);
    if (cfg.experiment == "counterexample") return run_counterexample(cfg);
    if (cfg.experiment == "spectral") return run_spectral(cfg);
    if (cfg.experiment == "trichotomy") return run_trichotomy(cfg);
    if (cfg.experiment == "extremal") return run_extremal(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "unknown experiment: " << cfg.experiment << "\n";
  return 2;
}
