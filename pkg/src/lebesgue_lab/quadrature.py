"""Deterministic one-dimensional quadrature.

Integrands are vectorized callables: they receive a float64 array of nodes
and return an array of the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ValidationError

DEFAULT_ORDER = 32
MAX_ORDER = 128


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    panels: int
    converged: bool = True


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule on [-1, 1] with ``order`` nodes (2 <= order <= 128).

    Nodes come from Newton iteration on the Legendre recurrence started at
    cos(pi (i - 1/4) / (n + 1/2)); the rule is symmetrized afterwards.
    """
    if int(order) != order or not 2 <= order <= MAX_ORDER:
        raise ValidationError(f"Gauss-Legendre order must be in [2, {MAX_ORDER}], got {order!r}")
    n = int(order)
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    w = 2.0 / ((1 - x * x) * dp * dp)
    x = x[::-1]
    w = w[::-1]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return QuadratureRule(nodes=x, weights=w, order=n)


def panel_integrals(f, edges, order: int = DEFAULT_ORDER) -> np.ndarray:
    """Gauss-Legendre integral of ``f`` over each panel [edges[i], edges[i+1]]."""
    edges = np.asarray(edges, dtype=float)
    rule = gauss_legendre(order)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = mid[:, None] + half[:, None] * rule.nodes[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    return half * (vals @ rule.weights)


def _subdivide(edges, max_width):
    if max_width is None:
        return edges
    out = [edges[:1]]
    for a, b in zip(edges[:-1], edges[1:]):
        m = max(1, math.ceil((b - a) / max_width))
        out.append(np.linspace(a, b, m + 1)[1:])
    return np.concatenate(out)


def integrate_piecewise_abs(f, breakpoints, interval, order: int = DEFAULT_ORDER,
                            max_width: float | None = None) -> IntegralResult:
    """Integral of |f| over ``interval`` when f keeps one sign between breakpoints.

    Each subinterval (optionally cut further into panels no wider than
    ``max_width``) is integrated with a Gauss rule and the absolute panel
    values are summed.  The error estimate is the change under doubling of
    the rule order (capped at 128 nodes).
    """
    a, b = map(float, interval)
    bp = np.asarray(breakpoints, dtype=float).ravel()
    if bp.size and (np.any(np.diff(bp) < 0) or bp[0] <= a or bp[-1] >= b):
        raise ValidationError("breakpoints must be sorted and inside the open interval")
    edges = _subdivide(np.concatenate([[a], bp, [b]]), max_width)
    coarse = np.abs(panel_integrals(f, edges, order)).sum()
    fine = np.abs(panel_integrals(f, edges, min(2 * order, MAX_ORDER))).sum()
    return IntegralResult(value=float(coarse), error_estimate=float(abs(fine - coarse)),
                          panels=len(edges) - 1)


def _simpson(h, fa, fm, fb):
    return h * (fa + 4.0 * fm + fb) / 6.0


def integrate_adaptive(f, interval, tol: float = 1e-10, *, rtol: float = 0.0,
                       max_depth: int = 50, initial_panels: int = 16,
                       max_panels: int = 1 << 22) -> IntegralResult:
    """Adaptive Simpson integration with Richardson-corrected panel values.

    Every panel compares Simpson's rule on the whole panel with the sum over
    its two halves; the difference is the panel's error estimate (kept
    without the usual 1/15 factor, so kinks are not under-reported) and the
    returned value carries the Richardson correction.  Endpoints are sampled,
    so a kink close to a panel edge still perturbs the estimate.

    Refinement is level-synchronous: every panel whose estimate exceeds its
    width-weighted share of max(tol, rtol |I|) is halved, with all new nodes
    of a sweep evaluated in one call to ``f``.  The initial partition uses
    Chebyshev-spaced edges to avoid aliasing with periodic integrands.
    Panels at ``max_depth`` are never split; if the target cannot be met the
    best value is returned with ``converged=False``.
    """
    a, b = map(float, interval)
    if not tol > 0:
        raise ValidationError("tol must be positive")
    length = b - a
    if length == 0:
        return IntegralResult(0.0, 0.0, 0)
    u = 0.5 * (1.0 - np.cos(np.pi * np.arange(initial_panels + 1) / initial_panels))
    edges = a + length * u
    edges[-1] = b
    lo, hi = edges[:-1], edges[1:]
    h = hi - lo
    first = np.asarray(f(np.concatenate([edges, 0.5 * (lo + hi)])), dtype=float)
    fa, fb, fm = first[:-initial_panels - 1], first[1:initial_panels + 1], first[initial_panels + 1:]
    quarter = np.asarray(f(np.concatenate([lo + 0.25 * h, lo + 0.75 * h])), dtype=float)
    fq1, fq3 = quarter[:initial_panels], quarter[initial_panels:]
    depth = np.zeros(initial_panels, dtype=int)
    while True:
        h = hi - lo
        coarse = _simpson(h, fa, fm, fb)
        fine = _simpson(0.5 * h, fa, fq1, fm) + _simpson(0.5 * h, fm, fq3, fb)
        err = np.abs(fine - coarse)
        total = float(np.sum(fine + (fine - coarse) / 15.0))
        total_err = float(err.sum())
        target = max(tol, rtol * abs(total))
        if total_err <= target:
            return IntegralResult(total, total_err, lo.size, True)
        split = (err > target * h / length) & (depth < max_depth)
        if not split.any() or lo.size + split.sum() > max_panels:
            return IntegralResult(total, total_err, lo.size, False)
        keep = ~split
        s_lo, s_hi = lo[split], hi[split]
        s_mid = 0.5 * (s_lo + s_hi)
        s_h = s_hi - s_lo
        # children: [lo, mid] and [mid, hi]; their midpoints are the old quarter points
        new_lo = np.concatenate([s_lo, s_mid])
        new_hi = np.concatenate([s_mid, s_hi])
        new_fa = np.concatenate([fa[split], fm[split]])
        new_fm = np.concatenate([fq1[split], fq3[split]])
        new_fb = np.concatenate([fm[split], fb[split]])
        nodes = np.concatenate([s_lo + 0.125 * s_h, s_lo + 0.375 * s_h,
                                s_lo + 0.625 * s_h, s_lo + 0.875 * s_h])
        vals = np.asarray(f(nodes), dtype=float)
        m = s_lo.size
        new_fq1 = np.concatenate([vals[:m], vals[2 * m:3 * m]])
        new_fq3 = np.concatenate([vals[m:2 * m], vals[3 * m:]])
        new_depth = np.concatenate([depth[split], depth[split]]) + 1
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        fa = np.concatenate([fa[keep], new_fa])
        fm = np.concatenate([fm[keep], new_fm])
        fb = np.concatenate([fb[keep], new_fb])
        fq1 = np.concatenate([fq1[keep], new_fq1])
        fq3 = np.concatenate([fq3[keep], new_fq3])
        depth = np.concatenate([depth[keep], new_depth])
