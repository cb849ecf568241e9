"""Multiplier sequences, Cesaro means and L1 norms of zonal kernels.

A zonal kernel is stored by its coefficients in the basis Z_k = C_k P_k(t)
(Z_{2k} on real projective spaces), and its L1 norm against the normalized
invariant measure is computed in the angle eta, t = cos(eta):

    ||sum_k a_k Z_k||_1 = int_0^pi |sum_k a_k Z_k(cos eta)|
                          sin(eta/2)^{2a+1} cos(eta/2)^{2b+1} / B(a+1, b+1) d eta.

Sign changes are located on a uniform eta grid and bisected; Gauss panels
between them give the integral of |.|.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, TruncationError, ValidationError
from .lebesgue import QUAD_REL_LIMIT, asymptotic_constant
from .manifold import ManifoldSpec
from .quadrature import DEFAULT_ORDER, gauss_legendre, integrate_piecewise_abs
from .specfn import jacobi_series, log_beta, log_gamma, scan_roots

SCAN_POINTS = 4096
TRUNCATION_LIMIT = 0.01


def default_k_max(n_max: int) -> int:
    """Truncation horizon used when none is given: max(4 n_max, 256)."""
    return max(4 * int(n_max), 256)


class SeqKind(enum.Enum):
    SOBOLEV = "sobolev"
    USER_TABLE = "user"
    LOG_DAMPED = "logdamped"


@dataclass(frozen=True)
class MultiplierSeq:
    """A multiplier sequence lambda_k truncated at ``k_max``.

    Sobolev: lambda_k = (k(k + a + b + 1))^{-gamma/2} for k >= 1.
    LogDamped: lambda_k = k^{-(d-1)/2} (ln k)^{-alpha} for k >= 2.
    UserTable: lambda_k = values[k], zero past the table.
    Indices below ``first_index`` carry the placeholder 0.
    """

    kind: SeqKind
    spec: ManifoldSpec
    k_max: int
    gamma: float | None = None
    alpha: float | None = None
    values: tuple = field(default=())

    @classmethod
    def sobolev(cls, spec: ManifoldSpec, gamma: float, k_max: int = 256) -> "MultiplierSeq":
        if not gamma > 0:
            raise ValidationError(f"Sobolev gamma must be positive, got {gamma!r}")
        return cls(SeqKind.SOBOLEV, spec, _check_kmax(k_max), gamma=float(gamma))

    @classmethod
    def log_damped(cls, spec: ManifoldSpec, alpha: float, k_max: int = 256) -> "MultiplierSeq":
        if not alpha > 0:
            raise ValidationError(f"log-damped alpha must be positive, got {alpha!r}")
        return cls(SeqKind.LOG_DAMPED, spec, _check_kmax(k_max), alpha=float(alpha))

    @classmethod
    def table(cls, spec: ManifoldSpec, values, k_max: int | None = None) -> "MultiplierSeq":
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ValidationError("user table must be nonempty")
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("user table values must be finite")
        k_max = len(vals) - 1 if k_max is None else k_max
        return cls(SeqKind.USER_TABLE, spec, _check_kmax(k_max), values=vals)

    @property
    def first_index(self) -> int:
        return {SeqKind.SOBOLEV: 1, SeqKind.LOG_DAMPED: 2, SeqKind.USER_TABLE: 0}[self.kind]

    def formula(self, k) -> np.ndarray:
        """lambda_k without the truncation check (used for remainder bounds)."""
        k = np.asarray(k, dtype=float)
        out = np.zeros_like(k)
        ok = k >= self.first_index
        kk = k[ok]
        if self.kind is SeqKind.SOBOLEV:
            ab1 = self.spec.alpha + self.spec.beta + 1
            out[ok] = (kk * (kk + ab1)) ** (-0.5 * self.gamma)
        elif self.kind is SeqKind.LOG_DAMPED:
            out[ok] = kk ** (-0.5 * (self.spec.d - 1)) * np.log(kk) ** (-self.alpha)
        else:
            table = np.asarray(self.values)
            idx = kk.astype(int)
            inside = idx < table.size
            vals = np.zeros_like(kk)
            vals[inside] = table[idx[inside]]
            out[ok] = vals
        return out

    def __call__(self, k):
        """lambda_k for index or index array ``k``; past ``k_max`` is an error."""
        arr = np.asarray(k)
        if np.any(arr > self.k_max):
            raise TruncationError(f"index {int(np.max(arr))} beyond k_max={self.k_max}")
        if np.any(arr < 0):
            raise DomainError("multiplier indices are nonnegative")
        out = self.formula(arr)
        return float(out) if out.ndim == 0 else out

    def table_values(self) -> np.ndarray:
        """lambda_0 .. lambda_{k_max}."""
        return self.formula(np.arange(self.k_max + 1))


def _check_kmax(k_max) -> int:
    if int(k_max) != k_max or k_max < 1:
        raise ValidationError(f"k_max must be a positive integer, got {k_max!r}")
    return int(k_max)


def difference_table(seq: MultiplierSeq, s: int) -> np.ndarray:
    """Delta^s lambda_k for k = 0 .. k_max - s, by the backward recurrence."""
    if s < 0:
        raise ValidationError("difference order must be nonnegative")
    vals = seq.table_values()
    for _ in range(s):
        vals = vals[:-1] - vals[1:]
    return vals


def finite_difference(seq: MultiplierSeq, s: int, k: int) -> float:
    """Delta^s lambda_k with Delta^{s+1} lambda_k = Delta^s lambda_k - Delta^s lambda_{k+1}."""
    if s < 0:
        raise ValidationError("difference order must be nonnegative")
    if k < seq.first_index:
        raise DomainError(f"k={k} is below the first valid index {seq.first_index}")
    if k + s > seq.k_max:
        raise TruncationError(f"Delta^{s} lambda_{k} needs lambda_{k + s}, beyond k_max={seq.k_max}")
    vals = seq.formula(np.arange(k, k + s + 1))
    for _ in range(s):
        vals = vals[:-1] - vals[1:]
    return float(vals[0])


def cesaro_number(delta: float, n: int) -> float:
    """C_n^delta = Gamma(n + delta + 1) / (Gamma(delta + 1) Gamma(n + 1))."""
    if not delta > -1:
        raise DomainError(f"Cesaro numbers need delta > -1, got {delta!r}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    return math.exp(log_gamma(n + delta + 1) - log_gamma(delta + 1) - log_gamma(n + 1))


def _cesaro_row(delta: float, n: int) -> np.ndarray:
    # C_j^delta for j = 0..n via C_j = C_{j-1} (j + delta) / j
    j = np.arange(1, n + 1, dtype=float)
    return np.concatenate([[1.0], np.cumprod((j + delta) / j)])


@lru_cache(maxsize=64)
def _zonal_weights(spec: ManifoldSpec, kmax: int) -> np.ndarray:
    # C_k(M) for zonal indices 0..kmax, in log space
    a, b = spec.alpha, spec.beta
    log_c = (a + b + 1) * math.log(2.0) + log_beta(a + 1, b + 1)
    out = np.empty(kmax + 1)
    for k in range(kmax + 1):
        m = spec.degree(k)
        log_end = log_gamma(m + a + 1) - log_gamma(a + 1) - log_gamma(m + 1)
        if m == 0:
            log_nsq = log_c
        else:
            log_nsq = ((a + b + 1) * math.log(2.0) - math.log(2 * m + a + b + 1) + log_gamma(m + a + 1)
                       + log_gamma(m + b + 1) - log_gamma(m + 1) - log_gamma(m + a + b + 1))
        out[k] = math.exp(log_c + log_end - log_nsq)
    out.flags.writeable = False
    return out


def zonal_jacobi_coefficients(spec: ManifoldSpec, coef) -> np.ndarray:
    """Map coefficients in the Z basis to coefficients of P_m^{(a,b)} by degree."""
    coef = np.asarray(coef, dtype=float)
    w = _zonal_weights(spec, coef.size - 1)
    if not spec.projective_even:
        return coef * w
    out = np.zeros(2 * coef.size - 1)
    out[::2] = coef * w
    return out


@dataclass(frozen=True)
class NormResult:
    value: float
    error_estimate: float
    sign_changes: int
    converged: bool


def zonal_l1_norm(spec: ManifoldSpec, coef, order: int = DEFAULT_ORDER) -> NormResult:
    """L1 norm of sum_k coef[k] Z_k over the normalized invariant measure."""
    coef = np.asarray(coef, dtype=float)
    if coef.size == 0 or not np.any(coef):
        return NormResult(0.0, 0.0, 0, True)
    jc = zonal_jacobi_coefficients(spec, coef)
    last = np.flatnonzero(jc)[-1]
    jc = jc[:last + 1]
    deg = int(last)
    a, b = spec.alpha, spec.beta
    inv_b = math.exp(-log_beta(a + 1, b + 1))

    def series(eta):
        return jacobi_series(a, b, jc, np.cos(eta))

    def integrand(eta):
        return series(eta) * np.sin(0.5 * eta) ** (2 * a + 1) * np.cos(0.5 * eta) ** (2 * b + 1) * inv_b

    if deg == 0:
        roots = np.empty(0)
    else:
        grid = np.linspace(0.0, math.pi, max(SCAN_POINTS, 16 * deg) + 1)
        roots = scan_roots(series, grid[1:-1], xtol=1e-15)
    width = 2 * math.pi / max(deg, 16)
    res = integrate_piecewise_abs(integrand, roots, (0.0, math.pi), order, max_width=width)
    ok = res.error_estimate <= QUAD_REL_LIMIT * max(res.value, 1e-300)
    return NormResult(res.value, res.error_estimate, int(roots.size), ok)


def cesaro_kernel_l1(spec: ManifoldSpec, delta: float, n: int, order: int = DEFAULT_ORDER) -> NormResult:
    """||S_n^delta||_1 with S_n^delta = sum_m C_{n-m}^delta / C_n^delta Z_m.

    On real projective spaces Z_m stands for Z_{2m}, so delta = 0 gives the
    norm of S_{2n}.
    """
    if not delta >= 0:
        raise ValidationError(f"delta must be nonnegative, got {delta!r}")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    row = _cesaro_row(delta, n)
    return zonal_l1_norm(spec, row[::-1] / row[-1], order)


def _far_sum(term, start: float, blocks: int = 60):
    """Approximate sum_{k > start} term(k) by Gauss rules on doubling blocks.

    Returns inf when the blocks stop shrinking (divergent or too slow).
    """
    rule = gauss_legendre(16)
    total = 0.0
    lo = start + 0.5
    last = math.inf
    for _ in range(blocks):
        hi = 2 * lo
        x = 0.5 * (hi + lo) + 0.5 * (hi - lo) * rule.nodes
        part = float(0.5 * (hi - lo) * np.dot(rule.weights, term(x)))
        total += part
        if part <= 1e-15 * total:
            return total
        last = part
        lo = hi
    return total if last <= 1e-6 * total else math.inf


@dataclass(frozen=True)
class TailResult:
    n: int
    value: float
    error_estimate: float
    truncation_bound: float
    truncated: bool
    converged: bool


def tail_kernel_l1(spec: ManifoldSpec, seq: MultiplierSeq, n: int, order: int = DEFAULT_ORDER) -> TailResult:
    """||sum_{k=n+1}^{k_max} lambda_k Z_k||_1 with a crude remainder bound.

    The bound is sum_{k > k_max} |lambda_k| ||Z_k||_1 with ||Z_k||_1
    extrapolated from ||Z_{k_max}||_1 by the k^{(d-1)/2} growth law.  The
    result is flagged ``truncated`` when the bound exceeds 1% of the value.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if n + 1 > seq.k_max:
        raise TruncationError(f"tail from n + 1 = {n + 1} lies beyond k_max={seq.k_max}")
    lam = seq.table_values()
    coef = np.zeros(seq.k_max + 1)
    coef[n + 1:] = lam[n + 1:]
    res = zonal_l1_norm(spec, coef, order)
    bound = truncation_bound(spec, seq, order)
    truncated = bound > TRUNCATION_LIMIT * res.value if res.value > 0 else bound > 0
    return TailResult(n, res.value, res.error_estimate, bound, bool(truncated), res.converged)


def truncation_bound(spec: ManifoldSpec, seq: MultiplierSeq, order: int = DEFAULT_ORDER) -> float:
    """Crude bound on the norm of the terms beyond ``k_max``."""
    if seq.kind is SeqKind.USER_TABLE and len(seq.values) <= seq.k_max + 1:
        return 0.0
    spike = np.zeros(seq.k_max + 1)
    spike[-1] = 1.0
    z_top = zonal_l1_norm(spec, spike, order).value
    power = 0.5 * (spec.d - 1)
    return _far_sum(lambda k: np.abs(seq.formula(k)) * z_top * (k / seq.k_max) ** power, seq.k_max)


@dataclass(frozen=True)
class KolmogorovRate:
    n: int
    predicted: float
    empirical: float
    ratio: float
    truncation_bound: float
    truncated: bool
    converged: bool


def kolmogorov_rate(spec: ManifoldSpec, seq: MultiplierSeq, n: int, order: int = DEFAULT_ORDER) -> KolmogorovRate:
    """Predicted K |lambda_{n+1}| n^{(d-1)/2} against the computed tail norm."""
    tail = tail_kernel_l1(spec, seq, n, order)
    predicted = asymptotic_constant(spec) * abs(seq(n + 1)) * n ** (0.5 * (spec.d - 1))
    ratio = tail.value / predicted if predicted > 0 else (math.nan if tail.value > 0 else 1.0)
    return KolmogorovRate(n, predicted, tail.value, ratio, tail.truncation_bound, tail.truncated, tail.converged)


@dataclass(frozen=True)
class ClassTRow:
    n: int
    first: float
    second: float
    reference: float
    ratio: float


@dataclass(frozen=True)
class ClassTReport:
    rows: tuple
    verdict: str


def _cesaro_block(delta: float, j: int, size: int) -> np.ndarray:
    # coefficients of C_j^delta S_j^delta = sum_{i<=j} C_{j-i}^delta Z_i
    out = np.zeros(size)
    out[:j + 1] = _cesaro_row(delta, j)[::-1]
    return out


def class_t_quantities(spec: ManifoldSpec, seq: MultiplierSeq, n: int, order: int = DEFAULT_ORDER) -> ClassTRow:
    """The two norms of the class-T definition at index n.

    first: ||sum_{s=0}^{d-1} Delta^s lambda_{n-s} C_{n-s}^s S_{n-s}^s||_1
    second: ||sum_{k=n+1}^{k_max-d} Delta^d lambda_k C_k^{d-1} S_k^{d-1}
             + sum_{s=1}^{d} Delta^s lambda_{n+1} C_n^s S_n^s||_1
    ratio: second / (|lambda_{n+1}| ||S_n^0||_1)

    Differences of order d lose about d binary digits to cancellation, so
    large d gives noisy values.
    """
    d = spec.d
    if n - (d - 1) < seq.first_index:
        raise ValidationError(f"n={n} too small: Delta^s lambda_(n-s) needs n - d + 1 >= {seq.first_index}")
    top = seq.k_max - d
    if n + 1 > top:
        raise TruncationError(f"n + 1 = {n + 1} exceeds k_max - d = {top}")
    size = top + 1
    diffs = [difference_table(seq, s) for s in range(d + 1)]

    first = np.zeros(size)
    for s in range(d):
        first += diffs[s][n - s] * _cesaro_block(s, n - s, size)

    second = np.zeros(size)
    ks = np.arange(n + 1, top + 1)
    dd = diffs[d][ks]
    # sum_k Delta^d lambda_k sum_{i<=k} C_{k-i}^{d-1} Z_i, done as a lower-triangular product
    row = _cesaro_row(d - 1, top)
    i = np.arange(size)
    lag = ks[:, None] - i[None, :]
    weights = np.where(lag >= 0, row[np.clip(lag, 0, None)], 0.0)
    second += dd @ weights
    for s in range(1, d + 1):
        second += diffs[s][n + 1] * _cesaro_block(s, n, size)

    a = zonal_l1_norm(spec, first, order).value
    b = zonal_l1_norm(spec, second, order).value
    ref = abs(seq(n + 1)) * cesaro_kernel_l1(spec, 0.0, n, order).value
    ratio = b / ref if ref > 0 else (0.0 if b == 0 else math.inf)
    return ClassTRow(n, a, b, ref, ratio)


def _strictly(seq, cmp) -> bool:
    return all(cmp(x, y) for x, y in zip(seq[:-1], seq[1:]))


def class_t_diagnostic(spec: ManifoldSpec, seq: MultiplierSeq, n_grid, order: int = DEFAULT_ORDER) -> ClassTReport:
    """Finite-n evidence for membership in class T.

    Verdict ``consistent`` when both the first quantity and the ratio
    decrease strictly along ``n_grid`` (or vanish identically),
    ``inconsistent`` when the ratio increases strictly, ``inconclusive``
    otherwise.  No finite grid proves membership.
    """
    n_grid = [int(n) for n in n_grid]
    if not n_grid or any(b <= a for a, b in zip(n_grid[:-1], n_grid[1:])):
        raise ValidationError("n_grid must be a nonempty increasing list")
    rows = tuple(class_t_quantities(spec, seq, n, order) for n in n_grid)
    firsts = [r.first for r in rows]
    ratios = [r.ratio for r in rows]
    if all(x == 0 for x in firsts + ratios):
        verdict = "consistent"
    elif len(rows) < 2:
        verdict = "inconclusive"
    elif _strictly(ratios, lambda x, y: y < x) and _strictly(firsts, lambda x, y: y < x):
        verdict = "consistent"
    elif _strictly(ratios, lambda x, y: y > x):
        verdict = "inconsistent"
    else:
        verdict = "inconclusive"
    return ClassTReport(rows, verdict)


def uniform_order(d: int) -> int:
    """M = (d + 1)/2 for odd d and (d + 2)/2 for even d."""
    return (d + 1) // 2 if d % 2 else (d + 2) // 2


@dataclass(frozen=True)
class UniformCriterion:
    n: int
    M: int
    value: float
    remainder: float


def uniform_convergence_criterion(spec: ManifoldSpec, seq: MultiplierSeq, n: int) -> UniformCriterion:
    """n^{(d-1)/2} sum_{k=n+1}^{k_max-M-1} |Delta^{M+1} lambda_k| k^M.

    ``remainder`` estimates the omitted terms past k_max - M - 1 by a power
    law fitted to the summands at (k_max - M - 1)/2 and k_max - M - 1; it is
    inf when the fitted decay is not summable and nan for a user table,
    which defines nothing past its end.
    """
    d = spec.d
    M = uniform_order(d)
    top = seq.k_max - M - 1
    if n + 1 > top:
        raise TruncationError(f"n + 1 = {n + 1} exceeds k_max - M - 1 = {top}")
    diffs = difference_table(seq, M + 1)
    summand = np.abs(diffs[:top + 1]) * np.arange(top + 1, dtype=float) ** M
    scale = n ** (0.5 * (d - 1))
    value = scale * float(np.sum(summand[n + 1:]))

    if seq.kind is SeqKind.USER_TABLE:
        remainder = math.nan
    else:
        half = top // 2
        t_top, t_half = float(summand[top]), float(summand[half])
        if t_top == 0:
            remainder = 0.0
        else:
            p = math.log(t_half / t_top) / math.log(top / half) if t_half > 0 else 0.0
            remainder = scale * t_top * top / (p - 1) if p > 1 else math.inf
    return UniformCriterion(n, M, value, remainder)
