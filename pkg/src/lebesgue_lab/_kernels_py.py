"""Pure numpy twin of the compiled recurrence kernels in ``_kernels.pyx``."""
import numpy as np


def recurrence_eval(a, b, c, t):
    """Return ``P_K(t)`` for every entry of ``t``."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    p0 = np.zeros_like(t)
    p1 = np.ones_like(t)
    for k in range(len(a)):
        p2 = (a[k] * t + b[k]) * p1 - c[k] * p0
        p0 = p1
        p1 = p2
    return p1


def recurrence_series(a, b, c, coef, t):
    """Return ``sum_m coef[m] * P_m(t)`` for ``m = 0..len(coef)-1``."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    M = len(coef)
    if M == 0:
        return np.zeros_like(t)
    if len(a) < M - 1:
        raise ValueError("not enough recurrence coefficients for the series")
    p0 = np.zeros_like(t)
    p1 = np.ones_like(t)
    s = coef[0] * p1
    for k in range(M - 1):
        p2 = (a[k] * t + b[k]) * p1 - c[k] * p0
        p0 = p1
        p1 = p2
        s = s + coef[k + 1] * p1
    return s
