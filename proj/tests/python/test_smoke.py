import math

import numpy as np
import pytest

import mtlab


def test_constants():
    assert mtlab.sphere_measure(2) == pytest.approx(2 * math.pi, rel=1e-14)
    assert mtlab.sphere_measure(3) == pytest.approx(4 * math.pi, rel=1e-14)
    assert mtlab.sharp_exponent(2) == pytest.approx(4 * math.pi, rel=1e-14)


def test_phi_eval():
    assert mtlab.phi_eval(2, 0.0) == 0.0
    assert mtlab.phi_eval(2, 1.0) == pytest.approx(math.expm1(4 * math.pi), rel=1e-12)
    # small-argument branch keeps full relative accuracy
    lead = 4 * math.pi * 1e-8
    assert mtlab.phi_eval(2, 1e-4) == pytest.approx(lead, rel=1e-7)


def test_moser_profile():
    u = mtlab.moser(2, 3)
    assert u.value(0.0) == pytest.approx(3 / math.sqrt(2 * math.pi), rel=1e-12)
    assert mtlab.dirichlet_energy(u, 2) == pytest.approx(1.0, abs=1e-12)
    assert mtlab.lp_norm(u, 2, 2) ** 2 <= 0.25 + 1e-12
    assert mtlab.mt_functional(u, 2) >= 9 * (1 - math.exp(-18))


def test_mobius():
    img = mtlab.mobius_apply([0.5, 0.0], [0.0, 0.5])
    assert img[0] == pytest.approx(10 / 17, rel=1e-12)
    assert img[1] == pytest.approx(6 / 17, rel=1e-12)
    center, radius = mtlab.mobius_ball_image([0.5, 0.0], 0.5)
    assert center[0] == pytest.approx(0.4, rel=1e-12)
    assert radius == pytest.approx(0.4, rel=1e-12)


def test_disc_strip():
    assert mtlab.disc_strip(0.0, 0.0) == (0.0, 0.0)
    assert mtlab.disc_strip_jacobian(0.0, 0.0) == pytest.approx(
        16 / math.pi**2, rel=1e-14
    )
    assert mtlab.hyperbolic_density(0.5, 0.0) == pytest.approx(64 / 9, rel=1e-14)


def test_spectral():
    assert mtlab.rectangle_lambda1(2) == pytest.approx(5 * math.pi**2 / 16, rel=1e-14)
    lam, iters, residual = mtlab.lambda1_numeric(1.0, 100, 50)
    assert lam == pytest.approx(math.pi**2 / 2, rel=0.01)
    assert iters > 0
    assert mtlab.jensen_lower_bound(2) > 16 / math.pi


def test_rearrangement_roundtrip():
    rng = np.random.default_rng(5)
    values = rng.uniform(0.0, 1.0, size=(32, 48))
    sym = mtlab.double_symmetrize(values, -1.5, 1.5, -1.0, 1.0)
    assert sym.shape == values.shape
    assert np.sort(sym.ravel()) == pytest.approx(np.sort(values.ravel()))
    # idempotent
    again = mtlab.double_symmetrize(sym, -1.5, 1.5, -1.0, 1.0)
    assert np.array_equal(again, sym)


def test_growth_index_and_presets():
    idx, converged = mtlab.growth_index(mtlab.nl_power(3.0), 2)
    assert converged
    assert idx == pytest.approx(2.0, abs=0.05)
    aN = mtlab.sharp_exponent(2)
    idx, _ = mtlab.growth_index(mtlab.nl_phi_alpha(2, 0.5 * aN), 2)
    assert idx == pytest.approx(1.0, abs=0.05)
    f1, f2 = mtlab.case_preset(4, 2)
    assert f1(2.0) == pytest.approx(math.exp(2) - 3, rel=1e-12)
    assert f2(2.0) == pytest.approx(math.exp(4) - 5, rel=1e-12)


def test_maximize_smoke():
    value, energy, certified = mtlab.maximize_from_eigenfunction(
        k=2, L=8.0, nx=128, ny=32, max_iters=60
    )
    assert energy == pytest.approx(1.0, abs=1e-9)
    assert value > 16 / math.pi
    assert certified
