import math

import numpy as np
import pytest

import tpaopt


def test_level_system():
    s = tpaopt.LevelSystem(5.0, -1.9)
    assert s.gamma_f == pytest.approx(0.1)
    assert s.omega_f == pytest.approx(5.0)


def test_response_vectorized_and_symmetric():
    s = tpaopt.LevelSystem(3.0, -0.5)
    w1 = np.linspace(-5, 5, 7)
    w2 = np.linspace(2, -4, 7)
    assert np.allclose(tpaopt.response(s, w1, w2), tpaopt.response(s, w2, w1))
    assert tpaopt.normalization(s) == pytest.approx(2 * math.pi**2 / 1.5)


def test_separable_point():
    d = tpaopt.schmidt(tpaopt.LevelSystem(0.0, 0.0), half_width=100.0, step=0.25, rank=5)
    r = d.coefficients
    assert r[1] < 1e-8 * r[0]
    assert d.entropy == pytest.approx(-(r[0] ** 2) * math.log2(r[0] ** 2))


def test_entangled_point_and_limits():
    d = tpaopt.schmidt(tpaopt.LevelSystem(5.0, -1.9), modes=True)
    assert d.enhancement > 1.5
    assert d.modes1.shape[0] == len(d.nodes1)
    e_inf, s_inf = tpaopt.asymptotic_bounds(tpaopt.LevelSystem(50.0, -1.5), 30.0, 0.5)
    assert e_inf > 2.0 and s_inf > 1.0


def test_slm_and_pump():
    slm = tpaopt.optimal_slm(tpaopt.LevelSystem(0.0, 0.0), 1.0)
    assert slm.e_opt == pytest.approx(1.0, abs=1e-6)
    m = slm.shaper()
    assert slm.population(m, m) == pytest.approx(slm.p_shaped, rel=1e-10)

    pump = tpaopt.optimal_pump(tpaopt.LevelSystem(2.0, -1.0), 2.0, phi=1.0, zeta=7.0)
    assert pump.kind == "pump"
    assert pump.e_opt >= 1.0 - 1e-9
    assert pump.residual < 1e-6


def test_special_functions():
    assert tpaopt.complex_normal_cdf(0j) == pytest.approx(0.5)
    assert tpaopt.faddeeva(0j) == pytest.approx(1.0)


def test_errors():
    with pytest.raises(ValueError):
        tpaopt.LevelSystem(1.0, -2.5)
    with pytest.raises(ValueError):
        tpaopt.schmidt(tpaopt.LevelSystem(1.0, 0.0), method="qr")
