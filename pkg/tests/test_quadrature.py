import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lebesgue_lab.errors import ValidationError
from lebesgue_lab.quadrature import (
    gauss_legendre,
    integrate_adaptive,
    integrate_piecewise_abs,
    panel_integrals,
)
from lebesgue_lab.specfn import JacobiParams, jacobi_eval

HALF_BETA_34_34 = 0.8472130847939791  # (1/2) B(3/4, 3/4), mpmath at 30 digits


@pytest.mark.parametrize("order", [2, 5, 16, 32, 64, 128])
def test_gauss_legendre_matches_numpy(order):
    rule = gauss_legendre(order)
    x, w = np.polynomial.legendre.leggauss(order)
    np.testing.assert_allclose(rule.nodes, x, atol=1e-14)
    # numpy's own weights drift to ~3e-11 at 128 nodes
    np.testing.assert_allclose(rule.weights, w, rtol=1e-10, atol=1e-15)
    assert rule.weights.sum() == pytest.approx(2.0, abs=1e-14)


def test_gauss_legendre_weights_high_precision():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 50
    n = 128
    rule = gauss_legendre(n)
    for i in (0, 9, 40, 64, 127):
        xi = mpmath.findroot(lambda t: mpmath.legendre(n, t), mpmath.mpf(rule.nodes[i]), tol=1e-45)
        dp = mpmath.diff(lambda t: mpmath.legendre(n, t), xi)
        wi = 2 / ((1 - xi ** 2) * dp ** 2)
        assert abs(rule.nodes[i] - float(xi)) <= 2e-16
        assert abs(rule.weights[i] / float(wi) - 1) <= 1e-12
    mpmath.mp.dps = 15


@pytest.mark.parametrize("order", [1, 129, 3.5])
def test_gauss_legendre_order_bounds(order):
    with pytest.raises(ValidationError):
        gauss_legendre(order)


def test_panel_integrals_examples():
    assert panel_integrals(lambda t: t ** 6, [-1.0, 1.0], 4)[0] == pytest.approx(2 / 7, abs=1e-15)
    assert panel_integrals(np.exp, [0.0, 1.0], 16)[0] == pytest.approx(math.e - 1, abs=1e-15)
    edges = np.linspace(0.0, math.pi, 9)
    assert np.sum(panel_integrals(np.cos, edges)) == pytest.approx(0.0, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(order=st.integers(2, 40), data=st.data())
def test_polynomial_exactness(order, data):
    deg = data.draw(st.integers(0, 2 * order - 1))
    coef = np.asarray(data.draw(st.lists(st.floats(-1, 1), min_size=deg + 1, max_size=deg + 1)))
    poly = np.polynomial.Polynomial(coef)
    exact = poly.integ()(1.0) - poly.integ()(-1.0)
    got = panel_integrals(poly, [-1.0, 1.0], order)[0]
    assert abs(got - exact) <= 1e-13 * max(1.0, np.abs(coef).sum())


def test_piecewise_abs_jacobi():
    p = JacobiParams(1.0, 0.0, 5)
    roots = np.sort(np.polynomial.polynomial.polyroots(
        np.polynomial.Polynomial.fit(np.linspace(-1, 1, 40), jacobi_eval(p, np.linspace(-1, 1, 40)), 5).convert().coef))
    res = integrate_piecewise_abs(lambda t: jacobi_eval(p, t), roots.real, (-1.0, 1.0))
    # reference: |P| sampled densely with the root positions as panel edges
    edges = np.concatenate([[-1.0], roots.real, [1.0]])
    fine = np.linspace(0, 1, 50)
    ref = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        ref += abs(np.sum(panel_integrals(lambda t: jacobi_eval(p, t), a + (b - a) * fine, 20)))
    assert res.value == pytest.approx(ref, rel=1e-11)
    assert res.error_estimate <= 1e-11


def test_piecewise_abs_cos():
    res = integrate_piecewise_abs(np.cos, [math.pi / 2], (0.0, math.pi))
    assert res.value == pytest.approx(2.0, abs=1e-14)
    with pytest.raises(ValidationError):
        integrate_piecewise_abs(np.cos, [4.0], (0.0, math.pi))


def test_piecewise_max_width_splits_panels():
    res = integrate_piecewise_abs(np.sin, [], (0.0, math.pi), max_width=0.1)
    assert res.panels == 32
    assert res.value == pytest.approx(2.0, abs=1e-14)


def test_adaptive_smooth():
    res = integrate_adaptive(np.sin, (0.0, math.pi), 1e-12)
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_adaptive_endpoint_singularity():
    # the derivative blows up at both ends; value is B(3/4, 3/4)/2
    f = lambda x: np.sqrt(np.sin(x) * np.cos(x))
    res = integrate_adaptive(f, (0.0, math.pi / 2), 1e-11)
    assert res.converged
    assert res.value == pytest.approx(HALF_BETA_34_34, abs=1e-10)


def test_adaptive_finds_kinks():
    res = integrate_adaptive(lambda x: np.abs(np.cos(10 * x)), (0.0, math.pi), 1e-10)
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=1e-9)


def test_adaptive_reports_depth_cap():
    res = integrate_adaptive(lambda x: np.abs(np.cos(10 * x)), (0.0, math.pi), 1e-14, max_depth=3)
    assert not res.converged
    assert res.value == pytest.approx(2.0, abs=1e-3)


def test_adaptive_rtol_scales():
    res = integrate_adaptive(lambda x: 1e20 * np.exp(x), (0.0, 1.0), 1e-300, rtol=1e-12)
    assert res.converged
    assert res.value == pytest.approx(1e20 * (math.e - 1), rel=1e-11)


def test_adaptive_validation():
    with pytest.raises(ValidationError):
        integrate_adaptive(np.sin, (0.0, 1.0), 0.0)
    assert integrate_adaptive(np.sin, (1.0, 1.0)).value == 0.0


@settings(max_examples=25, deadline=None)
@given(k=st.integers(1, 30), a=st.floats(0.0, 1.0), w=st.floats(0.1, 2.0))
def test_order_doubling_agrees(k, a, w):
    # the doubled rule agrees with the base rule on smooth panels
    f = lambda x: np.cos(k * x + a)
    res = integrate_piecewise_abs(lambda x: np.exp(-w * x) * (2 + f(x)), [], (0.0, 1.0), 32, max_width=0.25)
    assert res.error_estimate <= 1e-11
