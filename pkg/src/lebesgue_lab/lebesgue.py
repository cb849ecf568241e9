"""Lebesgue constants of Fourier-Laplace projections.

The projection S_n onto degrees <= n has a zonal kernel; its operator norm
on C(M) is the L1 norm of that kernel against the normalized invariant
measure.  Writing t = cos(eta), the norm reduces to

    ||S_n|| = Gamma(n+a+b+2) / (Gamma(a+1) Gamma(n+b+1))
              * int_0^pi |P_n^{(a+1,b)}(cos eta)| sin(eta/2)^{2a+1} cos(eta/2)^{2b+1} d eta

for a = alpha, b = beta.  The integrand keeps one sign between the mapped
roots of P_n^{(a+1,b)}, so Gauss panels between consecutive roots are exact
up to rounding.  Real projective spaces carry only even degrees and use a
sum of two Jacobi polynomials instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .manifold import Family, ManifoldSpec, make_manifold
from .quadrature import DEFAULT_ORDER, integrate_adaptive, integrate_piecewise_abs
from .specfn import (
    JacobiParams,
    _eval_unchecked,
    beta_fn,
    gamma_ratio,
    jacobi_endpoint,
    jacobi_norm_sq,
    jacobi_roots_eta,
    log_gamma,
    scan_roots,
)

# quad_error above this fraction of the value marks a result as unconverged
QUAD_REL_LIMIT = 1e-8


@dataclass(frozen=True)
class LebesgueResult:
    n: int
    exact: float
    asymptotic: float
    ratio: float
    quad_error: float
    converged: bool = True


def _require_rp(spec_or_d):
    if isinstance(spec_or_d, ManifoldSpec):
        if spec_or_d.family is not Family.REAL_PROJECTIVE:
            raise ValidationError("expected a real projective space")
        return spec_or_d
    return make_manifold(Family.REAL_PROJECTIVE, spec_or_d)


def kernel_prefactor(spec: ManifoldSpec, n: int) -> float:
    """2^{-a-b-1} Gamma(n+a+b+2) / (Gamma(a+1) Gamma(n+b+1))."""
    a, b = spec.alpha, spec.beta
    return math.exp(-(a + b + 1) * math.log(2.0) + log_gamma(n + a + b + 2)
                    - log_gamma(a + 1) - log_gamma(n + b + 1))


def kernel_closed_form(spec: ManifoldSpec, n: int, t):
    """G_n(t, 1) = sum_{k<=n} P_k(t) P_k(1) / ||P_k||^2 in closed form.

    The projection kernel itself is c * G_n(t, 1).
    """
    if spec.projective_even:
        raise ValidationError("real projective spaces use kernel_closed_form_rp")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1):
        raise DomainError("t must lie in [-1, 1]")
    p = _eval_unchecked(spec.alpha + 1, spec.beta, n, t)
    return kernel_prefactor(spec, n) * p


def kernel_direct_sum(spec: ManifoldSpec, n: int, t):
    """G_n(t, 1) summed term by term; even degrees only for real projective spaces."""
    t = np.asarray(t, dtype=float)
    total = np.zeros_like(t)
    step = 2 if spec.projective_even else 1
    for k in range(0, step * n + 1, step):
        p = JacobiParams(spec.alpha, spec.beta, k)
        total = total + _eval_unchecked(spec.alpha, spec.beta, k, t) * jacobi_endpoint(p) / jacobi_norm_sq(p)
    return total


def kernel_closed_form_rp(d, n: int, t):
    """Even-degree kernel sum G*_{2n}(t, 1) on the real projective space of dimension d.

    Equals 2^{-d} Gamma(2n+d) / (Gamma(d/2) Gamma(2n+d/2))
    * (P_{2n}^{(d/2,(d-2)/2)}(t) + P_{2n}^{((d-2)/2,d/2)}(t)).
    """
    spec = _require_rp(d)
    d = spec.d
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise DomainError("t must lie in [0, 1] on a real projective space")
    a = (d - 2) / 2
    pref = math.exp(-d * math.log(2.0) + log_gamma(2 * n + d) - log_gamma(d / 2) - log_gamma(2 * n + d / 2))
    return pref * (_eval_unchecked(d / 2, a, 2 * n, t) + _eval_unchecked(a, d / 2, 2 * n, t))


def _lebesgue_integrand(spec: ManifoldSpec, n: int):
    a, b = spec.alpha, spec.beta

    def f(eta):
        return (_eval_unchecked(a + 1, b, n, np.cos(eta))
                * np.sin(0.5 * eta) ** (2 * a + 1) * np.cos(0.5 * eta) ** (2 * b + 1))

    return f


def _rp_integrand(d: int, n: int):
    a = (d - 2) / 2

    def f(eta):
        t = np.cos(eta)
        return (_eval_unchecked(d / 2, a, 2 * n, t) + _eval_unchecked(a, d / 2, 2 * n, t)) * np.sin(eta) ** (d - 1)

    return f


def _rp_prefactor(d: int, n: int) -> float:
    return math.exp((1 - d) * math.log(2.0) + log_gamma(2 * n + d) - log_gamma(d / 2) - log_gamma(2 * n + d / 2))


def _result(spec, n, exact, err):
    asym = asymptotic_constant(spec) * n ** ((spec.d - 1) / 2) if n > 0 else 0.0
    ratio = exact / asym if asym > 0 else math.nan
    ok = err <= QUAD_REL_LIMIT * abs(exact)
    return LebesgueResult(n=n, exact=exact, asymptotic=asym, ratio=ratio, quad_error=err, converged=ok)


def lebesgue_exact(spec: ManifoldSpec, n: int, order: int = DEFAULT_ORDER) -> LebesgueResult:
    """Operator norm of S_n on C(M); for real projective spaces, of S_{2n}."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if spec.projective_even:
        return lebesgue_exact_rp(spec, n, order)
    breaks = jacobi_roots_eta(JacobiParams(spec.alpha + 1, spec.beta, n)) if n > 0 else []
    res = integrate_piecewise_abs(_lebesgue_integrand(spec, n), breaks, (0.0, math.pi), order)
    pref = gamma_ratio((n + spec.alpha + spec.beta + 2,), (spec.alpha + 1, n + spec.beta + 1))
    return _result(spec, n, pref * res.value, pref * res.error_estimate)


def lebesgue_exact_rp(d, n: int, order: int = DEFAULT_ORDER) -> LebesgueResult:
    """Norm of S_{2n} on the real projective space of dimension d.

    The two-polynomial integrand has no Jacobi-root structure; its sign
    changes are located on a 40 n point grid in (0, pi/2) and bisected.
    """
    spec = _require_rp(d)
    d = spec.d
    if n < 0:
        raise ValidationError("n must be nonnegative")
    f = _rp_integrand(d, n)
    if n > 0:
        grid = np.linspace(0.0, 0.5 * math.pi, 40 * n + 1)
        breaks = scan_roots(f, grid[1:-1], xtol=1e-15)
    else:
        breaks = []
    res = integrate_piecewise_abs(f, breaks, (0.0, 0.5 * math.pi), order)
    pref = _rp_prefactor(d, n)
    return _result(spec, n, pref * res.value, pref * res.error_estimate)


def lebesgue_oracle(spec: ManifoldSpec, n: int, tol: float = 1e-10):
    """The same norm by adaptive quadrature of |kernel| with no root information.

    Only the degree is used: the initial partition has 8 (n + 2) panels, so
    no starting panel is wide enough for its five Simpson samples to alias
    with the oscillation and report a spurious zero error.
    """
    if spec.projective_even:
        f = _rp_integrand(spec.d, n)
        pref = _rp_prefactor(spec.d, n)
        interval = (0.0, 0.5 * math.pi)
    else:
        f = _lebesgue_integrand(spec, n)
        pref = gamma_ratio((n + spec.alpha + spec.beta + 2,), (spec.alpha + 1, n + spec.beta + 1))
        interval = (0.0, math.pi)
    return integrate_adaptive(lambda x: pref * np.abs(f(x)), interval, tol, rtol=tol,
                              initial_panels=8 * (n + 2))


def asymptotic_constant(spec: ManifoldSpec, chi: float | None = None) -> float:
    """Leading coefficient K in ||S_n|| ~ K n^{(d-1)/2}.

    K = 4 / (pi^{3/2} Gamma(d/2)) int_0^{pi/2} sin^{(d-3)/2} cos^chi
      = 2 B((d-1)/4, (chi+1)/2) / (pi^{3/2} Gamma(d/2)),
    with chi = beta + 1/2 (0 for real projective spaces) unless overridden.
    """
    chi = spec.chi if chi is None else chi
    d = spec.d
    return 2.0 * beta_fn((d - 1) / 4, (chi + 1) / 2) / (math.pi ** 1.5 * math.exp(log_gamma(d / 2)))


CAYLEY_CONSTANT = 11 * math.sqrt(2) / (2949120 * math.sqrt(math.pi))


def asymptotic_constant_gamma_form(spec: ManifoldSpec) -> float:
    """Family-specific gamma-function closed form of the leading coefficient."""
    d = spec.d
    g = lambda x: math.exp(log_gamma(x))
    fam = spec.family
    if fam is Family.SPHERE:
        return 2 * g((d - 1) / 4) * g((d + 1) / 4) / (math.pi ** 1.5 * g(d / 2) ** 2)
    if fam is Family.REAL_PROJECTIVE:
        return 2 * g((d - 1) / 4) / (math.pi * g(d / 2) * g((d + 1) / 4))
    if fam is Family.COMPLEX_PROJECTIVE:
        return 2 * g((d - 1) / 4) * g(0.75) / (math.pi ** 1.5 * g(d / 2) * g((d + 2) / 4))
    if fam is Family.QUATERNIONIC_PROJECTIVE:
        # cos exponent 3/2 = beta + 1/2
        return 2 * g((d - 1) / 4) * g(1.25) / (math.pi ** 1.5 * g(d / 2) * g((d + 4) / 4))
    return CAYLEY_CONSTANT


def quaternionic_tabulated_constant(d: int) -> float:
    """Gamma form built on cos exponent 2; exact norms do not converge to it."""
    g = lambda x: math.exp(log_gamma(x))
    return g((d - 1) / 4) / (math.pi * g(d / 2) * g((d + 5) / 4))


def constant_integrand(spec: ManifoldSpec, chi: float | None = None):
    """4/(pi^{3/2} Gamma(d/2)) sin^{(d-3)/2}(eta) cos^chi(eta) on (0, pi/2)."""
    chi = spec.chi if chi is None else chi
    scale = 4.0 / (math.pi ** 1.5 * math.exp(log_gamma(spec.d / 2)))
    p = (spec.d - 3) / 2

    def f(eta):
        return scale * np.sin(eta) ** p * np.cos(eta) ** chi

    return f


def asymptotic_constant_quadrature(spec: ManifoldSpec, tol: float = 1e-10, chi: float | None = None):
    """Adaptive quadrature of the constant's defining integral to relative ``tol``.

    The substitution eta = (pi/2)(3w^2 - 2w^3) turns the endpoint power
    singularities into analytic behaviour in w.  Near w = 0 the factor
    sin(eta)^p is written as [sin(eta) / w^2]^p w^{2p} so that the power of w
    combines with the Jacobian into w^{d-2}, finite at the endpoint.
    """
    chi = spec.chi if chi is None else chi
    scale = 4.0 / (math.pi ** 1.5 * math.exp(log_gamma(spec.d / 2)))
    p = (spec.d - 3) / 2

    def g(w):
        s = w * w * (3 - 2 * w)
        s_comp = (1 - w) ** 2 * (1 + 2 * w)
        # sin(pi s / 2) / w^2 without the 0/0 at w = 0
        ratio = 0.5 * math.pi * (3 - 2 * w) * np.sinc(0.5 * s)
        return (scale * ratio ** p * w ** (spec.d - 2)
                * np.sin(0.5 * math.pi * s_comp) ** chi * 3 * math.pi * (1 - w))

    # tiny absolute floor: the target is set by rtol alone
    return integrate_adaptive(g, (0.0, 1.0), 1e-300, rtol=tol)


def dirichlet_kernel(n: int, t):
    """D_n(t) = 1/2 + sum_{k=1}^n cos(k t) = sin((n + 1/2) t) / (2 sin(t/2))."""
    t = np.asarray(t, dtype=float)
    s = np.sin(0.5 * t)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.sin((n + 0.5) * t) / (2 * s)
    return np.where(np.abs(s) < 1e-300, n + 0.5, out)


def fejer_circle_constant(n: int, order: int = DEFAULT_ORDER) -> float:
    """(1/pi) int_{-pi}^{pi} |D_n(t)| dt, split at the zeros 2 j pi / (2n + 1)."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if n == 0:
        return 1.0
    zeros = 2 * math.pi * np.arange(1, n + 1) / (2 * n + 1)
    res = integrate_piecewise_abs(lambda t: dirichlet_kernel(n, t), zeros, (0.0, math.pi), order)
    return 2.0 * res.value / math.pi


@dataclass(frozen=True)
class XirongComparison:
    d: int
    k_left: float
    k_right: float
    k_theorem1: float

    @property
    def rel_diff_left_right(self) -> float:
        return abs(self.k_left - self.k_right) / abs(self.k_right)


def xirong_comparison(d: int) -> XirongComparison:
    """Evaluate both published forms of the sphere constant K_d next to ours."""
    if d < 2:
        raise ValidationError("d must be >= 2")
    lg = log_gamma
    left = math.exp(((d + 1) / 2 + 2) * math.log(2) - 1.5 * math.log(math.pi) - math.log(d - 1)
                    + 2 * lg((d + 1) / 2) - lg(d) - lg(d / 2))
    right = math.exp(3 * math.log(2) + lg((d + 1) / 2) - ((d + 1) / 2) * math.log(2)
                     - math.log(math.pi) - lg((d + 2) / 2) - lg(d / 2))
    return XirongComparison(d=d, k_left=left, k_right=right,
                            k_theorem1=asymptotic_constant(make_manifold(Family.SPHERE, d)))


def fit_leading_coefficient(ns, values, power: float, correction_power: float):
    """Least-squares (K, c0) in values ~ K n^power + c0 n^correction_power."""
    ns = np.asarray(ns, dtype=float)
    A = np.column_stack([ns ** power, ns ** correction_power])
    coef, *_ = np.linalg.lstsq(A, np.asarray(values, dtype=float), rcond=None)
    return float(coef[0]), float(coef[1])
