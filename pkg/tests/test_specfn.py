import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lebesgue_lab.errors import DomainError, ValidationError
from lebesgue_lab.specfn import (
    JacobiParams,
    asymptotic_params,
    beta_fn,
    jacobi_asymptotic,
    jacobi_derivative,
    jacobi_endpoint,
    jacobi_eval,
    jacobi_norm_sq,
    jacobi_ode_residual,
    jacobi_roots,
    jacobi_series,
    jacobi_symmetry_check,
    log_gamma,
    scan_roots,
)

# P_5^{(1,0)}(3/10) from the terminating 2F1 series in exact rationals
P5_10_AT_03 = 494183 / 1600000
# int_0^1 x^{11/4} (1-x)^{5/4} dx by mpmath.quad at 40 digits
BETA_15_4_9_4 = 0.04176049636696706555


def _hypergeometric_jacobi(k, a, b, t):
    # (a+1)_k / k! * 2F1(-k, k+a+b+1; a+1; (1-t)/2), summed at 50 digits
    with mpmath.workdps(50):
        a, b, z = mpmath.mpf(a), mpmath.mpf(b), (1 - mpmath.mpf(t)) / 2
        term, total = mpmath.mpf(1), mpmath.mpf(0)
        for m in range(k + 1):
            total += term
            term *= (m - k) * (k + a + b + 1 + m) / ((a + 1 + m) * (m + 1)) * z
        return float(mpmath.rf(a + 1, k) / mpmath.factorial(k) * total)


def test_log_gamma_basic_values():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)


def test_log_gamma_recurrence_chain():
    # ln Gamma(7.5) = ln Gamma(0.5) + sum ln(0.5 .. 6.5)
    chain = math.log(math.sqrt(math.pi)) + sum(math.log(0.5 + j) for j in range(7))
    assert log_gamma(7.5) == pytest.approx(chain, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=500.0))
def test_log_gamma_matches_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert abs(log_gamma(x) - ref) <= 1e-13 * abs(ref) + 1e-15


def test_beta_values():
    assert beta_fn(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
    assert beta_fn(15 / 4, 9 / 4) == pytest.approx(BETA_15_4_9_4, rel=1e-13)
    with pytest.raises(DomainError):
        beta_fn(0.0, 1.0)


def test_jacobi_params_validation():
    with pytest.raises(ValidationError):
        JacobiParams(-1.0, 0.0, 2)
    with pytest.raises(ValidationError):
        JacobiParams(0.0, 0.0, -1)
    with pytest.raises(ValidationError):
        JacobiParams(0.0, 0.0, 1.5)


def test_jacobi_eval_examples():
    assert jacobi_eval(JacobiParams(0.3, 2.0, 0), 0.4) == 1.0
    assert jacobi_eval(JacobiParams(2, 1, 3), 1.0) == pytest.approx(10.0, rel=1e-14)
    assert jacobi_eval(JacobiParams(1, 0, 5), 0.3) == pytest.approx(P5_10_AT_03, rel=1e-13)
    with pytest.raises(DomainError):
        jacobi_eval(JacobiParams(0, 0, 2), 1.5)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-0.9, max_value=8.0),
    st.floats(min_value=-0.9, max_value=8.0),
    st.integers(min_value=0, max_value=40),
    st.floats(min_value=-1.0, max_value=1.0),
)
def test_jacobi_eval_matches_series_oracle(a, b, k, t):
    ref = _hypergeometric_jacobi(k, a, b, t)
    scale = max(1.0, jacobi_endpoint(JacobiParams(a, b, k)), jacobi_endpoint(JacobiParams(b, a, k)))
    assert abs(jacobi_eval(JacobiParams(a, b, k), t) - ref) <= 1e-12 * scale


def test_jacobi_eval_array_shape():
    t = np.linspace(-1, 1, 12).reshape(3, 4)
    out = jacobi_eval(JacobiParams(1.5, 0.5, 7), t)
    assert out.shape == (3, 4)
    assert out[0, 0] == pytest.approx(jacobi_eval(JacobiParams(1.5, 0.5, 7), -1.0))


def test_jacobi_series_matches_termwise_sum():
    coef = np.array([0.5, -1.0, 2.0, 0.25, 0.0, 3.0])
    t = np.linspace(-1, 1, 9)
    ref = sum(c * jacobi_eval(JacobiParams(2.0, 1.0, k), t) for k, c in enumerate(coef))
    np.testing.assert_allclose(jacobi_series(2.0, 1.0, coef, t), ref, rtol=1e-13, atol=1e-13)


def test_endpoint_values():
    assert jacobi_endpoint(JacobiParams(3, 1, 0)) == pytest.approx(1.0, rel=1e-15)
    assert jacobi_endpoint(JacobiParams(0, 0, 9)) == pytest.approx(1.0, rel=1e-14)
    assert jacobi_endpoint(JacobiParams(7, 3, 4)) == pytest.approx(math.factorial(11) / (math.factorial(7) * math.factorial(4)), rel=1e-13)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-0.9, max_value=10.0), st.floats(min_value=-0.9, max_value=10.0),
       st.integers(min_value=0, max_value=60))
def test_endpoint_consistency(a, b, k):
    p = JacobiParams(a, b, k)
    assert jacobi_eval(p, 1.0) == pytest.approx(jacobi_endpoint(p), rel=1e-12)


@pytest.mark.parametrize("a,b,k,t", [(1, 0, 3, 0.5), (8, 3, 7, -0.9), (2.5, 2.5, 6, 0.1)])
def test_symmetry_examples(a, b, k, t):
    lhs, rhs = jacobi_symmetry_check(JacobiParams(a, b, k), t)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-0.9, max_value=8.0), st.floats(min_value=-0.9, max_value=8.0),
       st.integers(min_value=0, max_value=50))
def test_symmetry_on_grid(a, b, k):
    t = np.linspace(-1, 1, 51)
    lhs, rhs = jacobi_symmetry_check(JacobiParams(a, b, k), t)
    amp = np.max(np.abs(lhs))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * amp


def test_norm_sq_examples():
    a, b = 2.0, 1.0
    c = 2 ** (a + b + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(a + b + 2)
    assert jacobi_norm_sq(JacobiParams(a, b, 0)) == pytest.approx(c, rel=1e-14)
    assert jacobi_norm_sq(JacobiParams(0, 0, 4)) == pytest.approx(2 / 9, rel=1e-14)
    x, w = np.polynomial.legendre.leggauss(20)
    quad = np.sum(w * jacobi_eval(JacobiParams(1, 0, 3), x) ** 2 * (1 - x))
    assert jacobi_norm_sq(JacobiParams(1, 0, 3)) == pytest.approx(quad, rel=1e-13)


@pytest.mark.parametrize("a,b", [(0.0, 0.0), (1.0, 0.0), (0.5, 1.5), (3.0, 3.0), (7.0, 3.0)])
def test_orthogonality(a, b):
    # Gauss-Jacobi-free check: integer exponents, so Gauss-Legendre in t is exact
    x, w = np.polynomial.legendre.leggauss(60)
    if a != int(a) or b != int(b):
        # half-integer weight: integrate in eta where it becomes a polynomial in sin, cos
        eta = 0.5 * np.pi * (x + 1)
        x = np.cos(eta)
        w = w * 0.5 * np.pi * np.sin(eta)
    weight = (1 - x) ** a * (1 + x) ** b
    P = np.array([jacobi_eval(JacobiParams(a, b, k), x) for k in range(13)])
    gram = (P * w * weight) @ P.T
    norms = np.array([jacobi_norm_sq(JacobiParams(a, b, k)) for k in range(13)])
    off = gram / np.sqrt(np.outer(norms, norms)) - np.eye(13)
    assert np.max(np.abs(off)) <= 1e-10


def test_derivative_matches_finite_difference():
    p = JacobiParams(1.5, 0.5, 9)
    t = np.linspace(-0.9, 0.9, 7)
    h = 1e-6
    fd = (jacobi_eval(p, t + h) - jacobi_eval(p, t - h)) / (2 * h)
    np.testing.assert_allclose(jacobi_derivative(p, t), fd, rtol=1e-7, atol=1e-6)
    assert jacobi_derivative(JacobiParams(1, 1, 0), 0.3) == 0.0


def test_ode_residual_examples():
    assert jacobi_ode_residual(JacobiParams(2, 1, 0), 0.3) == 0.0
    grid = np.linspace(-1, 1, 1001)
    for a, b, k, t in [(0, 0, 5, 0.37), (7, 3, 10, -0.6)]:
        p = JacobiParams(a, b, k)
        amp = np.max(np.abs(jacobi_eval(p, grid)))
        assert abs(jacobi_ode_residual(p, t)) <= 1e-8 * k * k * amp


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.5, max_value=8.0), st.floats(min_value=-0.5, max_value=8.0),
       st.integers(min_value=1, max_value=50))
def test_ode_residual_interior_grid(a, b, k):
    p = JacobiParams(a, b, k)
    t = np.linspace(-1, 1, 102)[1:-1]
    amp = np.max(np.abs(jacobi_eval(p, np.linspace(-1, 1, 1001))))
    assert np.max(np.abs(jacobi_ode_residual(p, t))) <= 1e-8 * k * k * amp


def test_roots_examples():
    np.testing.assert_allclose(jacobi_roots(JacobiParams(0, 0, 1)), [0.0], atol=1e-15)
    np.testing.assert_allclose(jacobi_roots(JacobiParams(0, 0, 2)), [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-14)
    p = JacobiParams(1, 0, 6)
    roots = jacobi_roots(p)
    grid = np.linspace(-1, 1, 10001)
    s = np.sign(jacobi_eval(p, grid))
    changes = grid[:-1][s[:-1] * s[1:] < 0]
    assert len(roots) == 6 == len(changes)
    assert np.all(np.abs(roots - changes) <= 2.5e-4)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.9, max_value=8.0), st.floats(min_value=-0.9, max_value=8.0),
       st.integers(min_value=1, max_value=60))
def test_roots_small_residual_and_interlacing(a, b, k):
    p = JacobiParams(a, b, k)
    r = jacobi_roots(p)
    assert np.all(np.diff(r) > 0)
    amp = np.max(np.abs(jacobi_eval(p, np.linspace(-1, 1, 2001))))
    assert np.max(np.abs(jacobi_eval(p, r))) <= 1e-11 * amp
    r_next = jacobi_roots(JacobiParams(a, b, k + 1))
    # r_next[0] < r[0] < r_next[1] < ... < r[-1] < r_next[-1]
    assert np.all(r_next[:-1] < r) and np.all(r < r_next[1:])


def test_scan_roots_exact_grid_zero():
    roots = scan_roots(lambda x: x - 0.5, np.linspace(0, 1, 11))
    np.testing.assert_allclose(roots, [0.5])


def test_asymptotic_phase_and_frequency():
    for d in range(2, 17):
        alpha = (d - 2) / 2
        ap = asymptotic_params(JacobiParams(alpha + 1, 0.5, 10))
        assert ap.phase == pytest.approx(-(d + 1) * math.pi / 4, rel=1e-15)
        assert ap.bigN == pytest.approx(10 + 1 + (alpha + 0.5) / 2, rel=1e-15)
        assert ap.bigN > ap.n


def test_asymptotic_domain():
    p = JacobiParams(1, 0, 10)
    with pytest.raises(DomainError):
        jacobi_asymptotic(p, 0.0, delta=0.1)
    with pytest.raises(DomainError):
        jacobi_asymptotic(p, 1.0, delta=0.0)


def _asym_error(alpha, beta, n):
    eta = np.linspace(0.3, math.pi - 0.3, 400)
    p = JacobiParams(alpha + 1, beta, n)
    return np.max(np.abs(jacobi_asymptotic(p, eta, delta=0.3) - jacobi_eval(p, np.cos(eta))))


@pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (0.5, 0.5), (1.0, 1.0), (1.0, 0.0)])
def test_asymptotic_error_order(alpha, beta):
    ns = [25, 50, 100, 200, 400]
    errs = [_asym_error(alpha, beta, n) for n in ns]
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert slope <= -1.2
    # one measured constant covers every n on this grid
    C = max(e * n ** 1.5 for e, n in zip(errs, ns))
    assert all(e <= C * n ** -1.5 for e, n in zip(errs, ns))


def test_asymptotic_single_points():
    # constant measured on the d = 2 grid, reused for d = 4
    C = max(_asym_error(0.0, 0.0, n) * n ** 1.5 for n in (25, 50, 100, 200, 400))
    p = JacobiParams(1, 0, 50)
    assert abs(jacobi_asymptotic(p, math.pi / 2) - jacobi_eval(p, 0.0)) <= C * 50 ** -1.5
    p4 = JacobiParams(2, 1, 100)
    C4 = max(_asym_error(1.0, 1.0, n) * n ** 1.5 for n in (25, 50, 100, 200, 400))
    assert abs(jacobi_asymptotic(p4, 1.0) - jacobi_eval(p4, math.cos(1.0))) <= C4 * 100 ** -1.5
