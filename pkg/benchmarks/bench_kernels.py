"""Time the compiled recurrence kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per case with the best wall time of each backend, the
speedup, and the largest absolute difference between the two outputs.
"""
import argparse
import timeit

import numpy as np

from lebesgue_lab import _kernels_py
from lebesgue_lab.specfn import recurrence_coefficients

try:
    from lebesgue_lab import _kernels as compiled
except ImportError:
    compiled = None

CASES = [
    # (name, alpha, beta, degree, points)
    ("eval  deg=50   pts=4096", 0.5, 0.5, 50, 4096),
    ("eval  deg=400  pts=4096", 7.0, 3.0, 400, 4096),
    ("eval  deg=2000 pts=512", 0.0, 0.0, 2000, 512),
    ("series deg=256 pts=4097", 0.0, 0.0, 256, 4097),
    ("series deg=1024 pts=16385", 7.0, 3.0, 1024, 16385),
]


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the numpy twin is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':28s} {'cython s':>10s} {'numpy s':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, a, b, k, m in CASES:
        A, B, C = recurrence_coefficients(a, b, k)
        t = np.cos(np.linspace(0.0, np.pi, m))
        if name.startswith("eval"):
            fast = lambda: compiled.recurrence_eval(A, B, C, t)
            slow = lambda: _kernels_py.recurrence_eval(A, B, C, t)
        else:
            coef = rng.standard_normal(k + 1)
            fast = lambda: compiled.recurrence_series(A, B, C, coef, t)
            slow = lambda: _kernels_py.recurrence_series(A, B, C, coef, t)
        diff = float(np.max(np.abs(fast() - slow())))
        tf, ts = _best(fast, args.repeat), _best(slow, args.repeat)
        print(f"{name:28s} {tf:10.2e} {ts:10.2e} {ts / tf:8.1f} {diff:10.1e}")


if __name__ == "__main__":
    main()
