"""Special functions: log-gamma, beta, and Jacobi polynomials.

Jacobi polynomials use the classical normalization

    P_k^{(a,b)}(1) = Gamma(k + a + 1) / (Gamma(a + 1) Gamma(k + 1))

and are evaluated by the three-term recurrence in the degree.  Array inputs
are accepted wherever a real argument is; the inner loops run in the
backend chosen by :mod:`lebesgue_lab._core`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _core
from .errors import DomainError, RootCountError, ValidationError


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_beta(p: float, q: float) -> float:
    return log_gamma(p) + log_gamma(q) - log_gamma(p + q)


def beta_fn(p: float, q: float) -> float:
    """Euler beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)."""
    if not (p > 0 and q > 0):
        raise DomainError(f"beta_fn requires p, q > 0, got ({p!r}, {q!r})")
    return math.exp(log_beta(p, q))


def gamma_ratio(num: tuple, den: tuple) -> float:
    """exp(sum log_gamma(num) - sum log_gamma(den)), safe for large arguments."""
    return math.exp(sum(log_gamma(x) for x in num) - sum(log_gamma(x) for x in den))


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float
    k: int

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValidationError(
                f"Jacobi parameters need alpha, beta > -1, got ({self.alpha}, {self.beta})"
            )
        if int(self.k) != self.k or self.k < 0:
            raise ValidationError(f"degree k must be a nonnegative integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))


@lru_cache(maxsize=256)
def recurrence_coefficients(alpha: float, beta: float, kmax: int):
    """Coefficients ``(A, B, C)`` with P_k = (A_k t + B_k) P_{k-1} - C_k P_{k-2}.

    Entry ``k-1`` of each array belongs to degree ``k``; derived from

        2k(k+a+b)(2k+a+b-2) P_k = (2k+a+b-1)[(2k+a+b)(2k+a+b-2) t + a^2 - b^2] P_{k-1}
                                  - 2(k+a-1)(k+b-1)(2k+a+b) P_{k-2}.
    """
    A = np.empty(kmax)
    B = np.empty(kmax)
    C = np.empty(kmax)
    ab = alpha + beta
    if kmax >= 1:
        A[0] = 0.5 * (ab + 2.0)
        B[0] = 0.5 * (alpha - beta)
        C[0] = 0.0
    for k in range(2, kmax + 1):
        s = 2.0 * k + ab
        lead = 2.0 * k * (k + ab) * (s - 2.0)
        mid = s - 1.0
        A[k - 1] = mid * s * (s - 2.0) / lead
        B[k - 1] = mid * (alpha * alpha - beta * beta) / lead
        C[k - 1] = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s / lead
    for arr in (A, B, C):
        arr.flags.writeable = False
    return A, B, C


def _as_grid(t):
    arr = np.asarray(t, dtype=np.float64)
    return arr, np.ascontiguousarray(arr.ravel())


def _eval_unchecked(alpha, beta, k, t):
    arr, flat = _as_grid(t)
    if k == 0:
        out = np.ones_like(flat)
    else:
        A, B, C = recurrence_coefficients(alpha, beta, k)
        out = _core.recurrence_eval(A, B, C, flat)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def jacobi_eval(params: JacobiParams, t):
    """P_k^{(alpha,beta)}(t) for ``t`` in [-1, 1] (scalar or array)."""
    arr = np.asarray(t, dtype=np.float64)
    if np.any(np.abs(arr) > 1.0) or np.any(np.isnan(arr)):
        raise DomainError("jacobi_eval requires t in [-1, 1]")
    return _eval_unchecked(params.alpha, params.beta, params.k, arr)


def jacobi_series(alpha: float, beta: float, coef, t):
    """sum_m coef[m] P_m^{(alpha,beta)}(t); one recurrence pass for all degrees."""
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    arr, flat = _as_grid(t)
    n = max(len(coef) - 1, 0)
    A, B, C = recurrence_coefficients(float(alpha), float(beta), n)
    out = _core.recurrence_series(A, B, C, coef, flat)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def jacobi_endpoint(params: JacobiParams) -> float:
    a, k = params.alpha, params.k
    return gamma_ratio((k + a + 1,), (a + 1, k + 1))


def jacobi_symmetry_check(params: JacobiParams, t):
    """Return ``(P_k^{(a,b)}(t), (-1)^k P_k^{(b,a)}(-t))``; equal up to rounding."""
    swapped = JacobiParams(params.beta, params.alpha, params.k)
    sign = -1.0 if params.k % 2 else 1.0
    return jacobi_eval(params, t), sign * jacobi_eval(swapped, -np.asarray(t, dtype=float))


def jacobi_norm_sq(params: JacobiParams) -> float:
    """Squared L2 norm against the weight (1 - t)^alpha (1 + t)^beta on (-1, 1)."""
    a, b, k = params.alpha, params.beta, params.k
    if k == 0:
        return math.exp((a + b + 1) * math.log(2.0) + log_beta(a + 1, b + 1))
    log_val = (
        (a + b + 1) * math.log(2.0)
        - math.log(2 * k + a + b + 1)
        + log_gamma(k + a + 1)
        + log_gamma(k + b + 1)
        - log_gamma(k + 1)
        - log_gamma(k + a + b + 1)
    )
    return math.exp(log_val)


def jacobi_derivative(params: JacobiParams, t, order: int = 1):
    """d^order/dt^order P_k^{(a,b)}(t) via the parameter-shift identity.

    d/dt P_k^{(a,b)} = (k + a + b + 1)/2 * P_{k-1}^{(a+1,b+1)}.
    """
    a, b, k = params.alpha, params.beta, params.k
    scale = 1.0
    for _ in range(order):
        if k == 0:
            zero = np.zeros_like(np.asarray(t, dtype=float))
            return float(zero) if zero.ndim == 0 else zero
        scale *= 0.5 * (k + a + b + 1)
        a, b, k = a + 1, b + 1, k - 1
    return scale * jacobi_eval(JacobiParams(a, b, k), t)


def jacobi_ode_residual(params: JacobiParams, t):
    """Left-hand side of the Jacobi differential equation at ``t``."""
    a, b, k = params.alpha, params.beta, params.k
    t = np.asarray(t, dtype=float)
    y = jacobi_eval(params, t)
    dy = jacobi_derivative(params, t, 1)
    d2y = jacobi_derivative(params, t, 2)
    return (1 - t * t) * d2y + (b - a - (a + b + 2) * t) * dy + k * (k + a + b + 1) * y


def scan_roots(f: Callable, grid, xtol: float = 0.0, max_iter: int = 200) -> np.ndarray:
    """Roots of ``f`` bracketed by sign changes on ``grid``, refined by bisection.

    ``f`` must accept arrays.  Sign changes across grid points where ``f`` is
    exactly zero are reported at that grid point.  Bisection runs on all
    brackets at once and stops when every bracket is narrower than ``xtol``
    or can no longer be split in floating point.
    """
    grid = np.asarray(grid, dtype=float)
    vals = f(grid)
    sgn = np.sign(vals)
    nz = np.flatnonzero(sgn)
    if nz.size < 2:
        return np.empty(0)
    left, right = nz[:-1], nz[1:]
    change = sgn[left] * sgn[right] < 0
    left, right = left[change], right[change]
    gap = right - left > 1
    exact = grid[(left[gap] + right[gap]) // 2]
    lo = grid[left[~gap]].copy()
    hi = grid[right[~gap]].copy()
    flo = sgn[left[~gap]].copy()
    for _ in range(max_iter):
        if lo.size == 0:
            break
        mid = 0.5 * (lo + hi)
        width = hi - lo
        if np.all((width <= xtol) | (mid <= lo) | (mid >= hi)):
            break
        fm = np.sign(f(mid))
        same = fm == flo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
        hit = fm == 0
        lo = np.where(hit, mid, lo)
        hi = np.where(hit, mid, hi)
    roots = np.concatenate([0.5 * (lo + hi), exact])
    roots.sort()
    return roots


def jacobi_roots_eta(params: JacobiParams) -> np.ndarray:
    """Roots of P_k^{(a,b)}(cos eta) in (0, pi), increasing in eta."""
    k = params.k
    if k < 1:
        raise ValidationError("jacobi_roots needs degree k >= 1")
    grid = np.linspace(0.0, np.pi, 20 * k + 1)
    f = lambda eta: _eval_unchecked(params.alpha, params.beta, k, np.cos(eta))
    roots = scan_roots(f, grid, xtol=1e-15)
    if roots.size != k:
        raise RootCountError(f"found {roots.size} roots for degree {k}, expected {k}")
    return roots


def jacobi_roots(params: JacobiParams) -> np.ndarray:
    """The k simple roots of P_k^{(a,b)} in (-1, 1), strictly increasing."""
    return np.cos(jacobi_roots_eta(params))[::-1].copy()


@dataclass(frozen=True)
class AsymptoticParams:
    """Oscillatory approximation P_n(cos eta) ~ n^{-1/2} kappa(eta) cos(N eta + phase)."""

    n: int
    kappa: Callable
    bigN: float
    phase: float


def asymptotic_params(params: JacobiParams) -> AsymptoticParams:
    """Darboux parameters for P_n^{(a,b)}.

    For the kernel polynomial P_n^{(alpha+1,beta)} pass ``a = alpha + 1``; the
    frequency is then n + 1 + (alpha+beta)/2 and the phase -(alpha+3/2) pi/2.
    """
    a, b, n = params.alpha, params.beta, params.k

    def kappa(eta):
        eta = np.asarray(eta, dtype=float)
        return np.sin(eta / 2) ** (-a - 0.5) * np.cos(eta / 2) ** (-b - 0.5) / math.sqrt(math.pi)

    return AsymptoticParams(n=n, kappa=kappa, bigN=n + 0.5 * (a + b + 1), phase=-0.5 * (a + 0.5) * math.pi)


def jacobi_asymptotic(params: JacobiParams, eta, delta: float = 1e-2):
    """Leading oscillatory term for P_n^{(a,b)}(cos eta), eta in [delta, pi - delta]."""
    if params.k < 1:
        raise ValidationError("asymptotic form needs degree >= 1")
    eta_arr = np.asarray(eta, dtype=float)
    if delta <= 0 or np.any(eta_arr < delta) or np.any(eta_arr > math.pi - delta):
        raise DomainError("eta must lie in [delta, pi - delta] with delta > 0")
    ap = asymptotic_params(params)
    val = ap.kappa(eta_arr) * np.cos(ap.bigN * eta_arr + ap.phase) / math.sqrt(ap.n)
    return float(val) if eta_arr.ndim == 0 else val
