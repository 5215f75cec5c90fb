#include <doctest.h>

#include <cmath>
#include <random>

#include "mtlab/diagnostics.hpp"
#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/rearrangement.hpp"
#include "mtlab/search.hpp"

using namespace mtlab;

TEST_CASE("discrete gradient matches finite differences of the functional") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  GridFunction u = smooth_bump(DomainSpec::strip(4), 128, 32, 0.0, 0.0, 1.0, 0.5);
  const GridFunction g = mt_gradient(u);
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  for (int trial = 0; trial < 20; ++trial) {
    GridFunction delta = u;
    for (auto& v : delta.values) v = dist(rng) - 0.5;
    double directional = 0.0;
    for (std::size_t n = 0; n < g.values.size(); ++n)
      directional += g.values[n] * delta.values[n];
    const double t = 1e-6;
    GridFunction up = u, dn = u;
    for (std::size_t n = 0; n < u.values.size(); ++n) {
      up.values[n] += t * delta.values[n];
      dn.values[n] -= t * delta.values[n];
    }
    const double fd = (mt_functional(up, s2) - mt_functional(dn, s2)) / (2 * t);
    CHECK(fd == doctest::Approx(directional).epsilon(1e-6));
  }
}

TEST_CASE("ascent from the phi_2 seed improves monotonically above the seed value") {
  GridFunction seed = eigenfunction_seed(2, 8.0, 256, 64);
  const double seed_value = mt_functional(seed, TruncatedExpSpec::sharp(2));
  SearchOptions opts;
  opts.max_iters = 400;
  opts.rel_tol = 1e-7;
  opts.keep_log = true;
  const SearchState st = maximize(seed, opts);
  CHECK(st.value >= seed_value);
  CHECK(st.value > 16.0 / kPi);
  CHECK(st.energy == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(in_symmetric_class(st.iterate, 1e-12));
  for (std::size_t i = 1; i < st.value_log.size(); ++i)
    CHECK(st.value_log[i] >= st.value_log[i - 1]);
  for (double e : st.energy_log) CHECK(e == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("symmetrization-projection step never decreases the functional") {
  // equimeasurability keeps the value; projection rescales energy to 1
  GridFunction seed = eigenfunction_seed(3, 8.0, 256, 64);
  const TruncatedExpSpec s2 = TruncatedExpSpec::sharp(2);
  GridFunction sym = double_symmetrize(seed);
  CHECK(mt_functional(sym, s2) ==
        doctest::Approx(mt_functional(seed, s2)).epsilon(1e-12));
  const double e = dirichlet_energy(sym, 2);
  CHECK(e <= dirichlet_energy(seed, 2) * 1.02);
}

TEST_CASE("tiny initial step reports a critical seed") {
  GridFunction seed = eigenfunction_seed(2, 8.0, 128, 32);
  SearchOptions opts;
  opts.initial_step = 1e-20;
  opts.max_iters = 3;
  const SearchState st = maximize(seed, opts);
  CHECK(st.seed_was_critical);
  CHECK(st.iterations <= 1);
}

TEST_CASE("certify accepts a converged spread state and rejects bad ones") {
  GridFunction seed = eigenfunction_seed(2, 8.0, 256, 64);
  SearchOptions opts;
  opts.max_iters = 300;
  opts.rel_tol = 1e-7;
  const SearchState st = maximize(seed, opts);
  const CertifyReport good = certify(st);
  CHECK(good.energy_ok);
  CHECK(good.value_ok);
  CHECK(good.envelope_ok);
  CHECK(good.theta_ok);
  CHECK(good.pass);

  // zero function: fails on energy
  SearchState zero;
  zero.iterate = GridFunction::zeros(DomainSpec::strip(8), 64, 16);
  zero.value = 0.0;
  zero.energy = 0.0;
  const CertifyReport zrep = certify(zero);
  CHECK_FALSE(zrep.pass);
  CHECK(zrep.failing == "energy");

  // artificially concentrated state: the theta screen trips
  GridFunction spike = smooth_bump(DomainSpec::strip(2), 512, 256, 0.0, 0.0, 0.04, 1.0);
  const double e = dirichlet_energy(spike, 2);
  for (auto& v : spike.values) v /= std::sqrt(e);
  SearchState conc;
  conc.iterate = spike;
  conc.energy = dirichlet_energy(spike, 2);
  conc.value = mt_functional(spike, TruncatedExpSpec::sharp(2));
  const CertifyReport crep = certify(conc);
  CHECK_FALSE(crep.theta_ok);
  CHECK(crep.theta > 0.95);
  CHECK_FALSE(crep.pass);

  // transported capped Moser: concentrated in the same sense
  GridFunction moser_state = capped_moser_seed(std::exp(-5.0), 2.0, 1024, 1024);
  SearchState ms;
  ms.iterate = moser_state;
  ms.energy = dirichlet_energy(moser_state, 2);
  ms.value = mt_functional(moser_state, TruncatedExpSpec::sharp(2));
  CHECK_FALSE(certify(ms).pass);
}

TEST_CASE("truncation robustness of the converged value") {
  SearchOptions opts;
  opts.max_iters = 250;
  opts.rel_tol = 1e-7;
  const SearchState a = maximize(eigenfunction_seed(2, 8.0, 256, 64), opts);
  const SearchState b = maximize(eigenfunction_seed(2, 12.0, 384, 64), opts);
  CHECK(std::abs(a.value - b.value) / a.value < 0.005);
}
