"""Acceptance checks shared by ``lebesgue-lab verify`` and the test suite.

Each check returns a :class:`CheckResult`; ``quick`` shrinks the parameter
grids where a check is expensive but keeps every tolerance.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .lebesgue import (
    asymptotic_constant,
    asymptotic_constant_gamma_form,
    asymptotic_constant_quadrature,
    fejer_circle_constant,
    fit_leading_coefficient,
    kernel_closed_form,
    kernel_closed_form_rp,
    kernel_direct_sum,
    lebesgue_exact,
    lebesgue_oracle,
    xirong_comparison,
)
from .manifold import Family, admissible_manifolds, make_manifold
from .multiplier import MultiplierSeq, cesaro_kernel_l1, default_k_max, tail_kernel_l1
from .quadrature import panel_integrals
from .specfn import (
    JacobiParams,
    jacobi_endpoint,
    jacobi_eval,
    jacobi_norm_sq,
    jacobi_ode_residual,
    jacobi_symmetry_check,
)

GRONWALL = 2 ** 1.5 / math.sqrt(math.pi)
FEJER_SLOPE = 4 / math.pi ** 2
CAYLEY_PRINTED = 11 * math.sqrt(2) / (2949120 * math.sqrt(math.pi))

SIX = (
    ("sphere", 2),
    ("sphere", 3),
    ("complex-projective", 4),
    ("quaternionic-projective", 8),
    ("cayley", 16),
    ("real-projective", 3),
)


@dataclass
class CheckResult:
    id: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:2d} {self.name}: " + ", ".join(
            f"{k}={_short(v)}" for k, v in self.details.items())


def _short(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_gronwall(quick=False):
    s = make_manifold(Family.SPHERE, 2)
    ns = [100, 141, 200, 283, 400]
    K, c0 = fit_leading_coefficient(ns, [lebesgue_exact(s, n).exact for n in ns], 0.5, 0.0)
    return _rel(K, GRONWALL) <= 0.01, {"K": K, "target": GRONWALL, "rel": _rel(K, GRONWALL), "c0": c0}, 60.0


def check_fejer(quick=False):
    ns = [50 * 2 ** j for j in range(7)]
    vals = [fejer_circle_constant(n) for n in ns]
    slope = float(np.polyfit(np.log(ns), vals, 1)[0])
    return _rel(slope, FEJER_SLOPE) <= 0.01, {"slope": slope, "target": FEJER_SLOPE}, 30.0


def check_constants(quick=False):
    worst_gamma = worst_quad = 0.0
    for spec in admissible_manifolds(16):
        k = asymptotic_constant(spec)
        worst_gamma = max(worst_gamma, _rel(asymptotic_constant_gamma_form(spec), k))
        worst_quad = max(worst_quad, _rel(asymptotic_constant_quadrature(spec, 1e-10).value, k))
    cay = asymptotic_constant_gamma_form(make_manifold(Family.CAYLEY, 16))
    cay_rel = _rel(cay, CAYLEY_PRINTED)
    ok = worst_gamma <= 1e-12 and worst_quad <= 1e-10 and cay_rel <= 1e-12
    return ok, {"gamma_vs_beta": worst_gamma, "quadrature_vs_beta": worst_quad, "cayley": cay, "cayley_rel": cay_rel}, None


def check_kernel_identity(quick=False):
    t = np.linspace(-1.0, 1.0, 41)
    t_rp = np.linspace(0.0, 1.0, 41)
    specs = admissible_manifolds(8 if quick else 16)
    worst = 0.0
    for spec in specs:
        for n in range(31):
            if spec.projective_even:
                closed = kernel_closed_form_rp(spec, n, t_rp)
                direct = kernel_direct_sum(spec, n, t_rp)
            else:
                closed = kernel_closed_form(spec, n, t)
                direct = kernel_direct_sum(spec, n, t)
            worst = max(worst, float(np.max(np.abs(closed - direct)) / np.max(np.abs(closed))))
    return worst <= 1e-9, {"worst_rel": worst, "manifolds": len(specs)}, None


def check_oracle(quick=False):
    ns = [1, 10, 50, 100] if quick else range(1, 101)
    worst = 0.0
    where = None
    for fam, d in SIX:
        spec = make_manifold(fam, d)
        for n in ns:
            exact = lebesgue_exact(spec, n).exact
            oracle = lebesgue_oracle(spec, n, 1e-10)
            rel = _rel(oracle.value, exact)
            if not oracle.converged:
                rel = math.inf
            if rel > worst:
                worst, where = rel, f"{spec.label} n={n}"
    return worst <= 1e-9, {"worst_rel": worst, "at": where}, None


def check_trend(quick=False):
    out = {}
    ok = True
    for fam, d in SIX:
        spec = make_manifold(fam, d)
        e50 = abs(lebesgue_exact(spec, 50).ratio - 1)
        e200 = abs(lebesgue_exact(spec, 200).ratio - 1)
        ok &= e200 < e50 and e200 < 0.25
        out[spec.label] = e200
    return ok, out, None


def check_jacobi(quick=False):
    pairs = [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0), (1.5, 0.5), (3.0, 1.0), (7.0, 3.0), (-0.5, 0.5), (2.5, -0.3)]
    t = np.linspace(-1.0, 1.0, 201)
    ode = endpoint = sym = orth = 0.0
    for a, b in pairs:
        for k in range(51):
            p = JacobiParams(a, b, k)
            amp = float(np.max(np.abs(jacobi_eval(p, t))))
            ode = max(ode, float(np.max(np.abs(jacobi_ode_residual(p, t)))) / (max(k, 1) ** 2 * amp))
            endpoint = max(endpoint, _rel(jacobi_eval(p, 1.0), jacobi_endpoint(p)))
            lhs, rhs = jacobi_symmetry_check(p, t)
            sym = max(sym, float(np.max(np.abs(lhs - rhs))) / amp)
        if a >= 0 and b >= 0:
            orth = max(orth, _max_off_diagonal(a, b, 12))
    ok = ode <= 1e-8 and endpoint <= 1e-12 and sym <= 1e-12 and orth <= 1e-10
    return ok, {"ode": ode, "endpoint": endpoint, "symmetry": sym, "orthogonality": orth}, None


def _max_off_diagonal(a, b, kmax):
    # Gram matrix in eta, where the weight becomes sin(eta/2)^{2a+1} cos(eta/2)^{2b+1}
    edges = np.linspace(0.0, math.pi, 9)
    worst = 0.0
    norms = [jacobi_norm_sq(JacobiParams(a, b, k)) for k in range(kmax + 1)]
    for i in range(kmax + 1):
        for j in range(i):
            def f(eta, i=i, j=j):
                x = np.cos(eta)
                w = 2 ** (a + b + 1) * np.sin(eta / 2) ** (2 * a + 1) * np.cos(eta / 2) ** (2 * b + 1)
                return jacobi_eval(JacobiParams(a, b, i), x) * jacobi_eval(JacobiParams(a, b, j), x) * w
            g = float(np.sum(panel_integrals(f, edges, 64)))
            worst = max(worst, abs(g) / math.sqrt(norms[i] * norms[j]))
    return worst


def check_cesaro(quick=False):
    s = make_manifold(Family.SPHERE, 2)
    ns = [8, 16, 32, 64, 128]
    logn = np.log(ns)
    slopes = {}
    for delta in (0.5, 0.25, 1.0):
        vals = [cesaro_kernel_l1(s, delta, n).value for n in ns]
        slopes[delta] = float(np.polyfit(logn, np.log(vals), 1)[0])
    ok_log = slopes[0.5] <= 0.15
    ok_power = abs(slopes[0.25] - 0.25) <= 0.1
    ok_bounded = slopes[1.0] <= 0.05
    details = {"slope_delta_1/2": slopes[0.5], "slope_delta_1/4": slopes[0.25], "slope_delta_1": slopes[1.0],
               "log_case": ok_log, "power_case": ok_power, "bounded_case": ok_bounded}
    return ok_log and ok_power and ok_bounded, details, None


def check_rate(quick=False):
    s = make_manifold(Family.SPHERE, 2)
    ns = [16, 32, 64]
    seq = MultiplierSeq.sobolev(s, 3.0, default_k_max(max(ns)))
    K = asymptotic_constant(s)
    devs = []
    for n in ns:
        tail = tail_kernel_l1(s, seq, n).value
        devs.append(abs(tail / (K * seq(n + 1) * math.sqrt(n)) - 1))
    ok = devs[-1] <= 0.15 and devs[0] > devs[1] > devs[2]
    return ok, {"deviations": devs, "k_max": seq.k_max}, 120.0


def check_xirong(quick=False):
    x = xirong_comparison(2)
    k = asymptotic_constant(make_manifold(Family.SPHERE, 2))
    ok = x.rel_diff_left_right > 0.01 and _rel(k, GRONWALL) <= 1e-12
    return ok, {"k_left": x.k_left, "k_right": x.k_right, "rel_diff": x.rel_diff_left_right,
                "k_theorem1": k, "vs_gronwall": _rel(k, GRONWALL)}, None


def check_determinism(quick=False):
    from .cli import main_capture

    argv = ["table", "--family", "sphere", "--d", "3", "--n", "1..24", "--format", "csv"]
    one = main_capture(argv + ["--threads", "1"])
    many = main_capture(argv + ["--threads", "4"])
    as_json = main_capture(argv[:-1] + ["json", "--threads", "3"])
    ok = one == many and one[0] == 0 and as_json[0] == 0
    return ok, {"bytes": len(one[1]), "identical": one == many}, None


CHECKS = (
    (1, "gronwall-baseline", check_gronwall),
    (2, "fejer-baseline", check_fejer),
    (3, "constant-cross-validation", check_constants),
    (4, "kernel-identity", check_kernel_identity),
    (5, "oracle-equivalence", check_oracle),
    (6, "asymptotic-trend", check_trend),
    (7, "jacobi-core", check_jacobi),
    (8, "cesaro-growth", check_cesaro),
    (9, "kolmogorov-rate", check_rate),
    (10, "xirong-adjudication", check_xirong),
    (11, "determinism", check_determinism),
)


def run_check(check_id: int, quick: bool = False) -> CheckResult:
    for cid, name, fn in CHECKS:
        if cid == check_id:
            start = time.perf_counter()
            ok, details, budget = fn(quick)
            elapsed = time.perf_counter() - start
            if budget is not None:
                details["budget_s"] = budget
                ok = ok and elapsed < budget
            return CheckResult(cid, name, bool(ok), details, elapsed)
    raise KeyError(check_id)


def run_all(quick: bool = False):
    return [run_check(cid, quick) for cid, _, _ in CHECKS]
