# cython: language_level=3
"""Compiled three-term recurrence kernels.

Both entry points take recurrence coefficient arrays ``a, b, c`` of equal
length ``K`` with the convention

    P_0 = 1,  P_k = (a[k-1] * t + b[k-1]) * P_{k-1} - c[k-1] * P_{k-2}

for ``k = 1..K`` (``c[0]`` multiplies ``P_{-1} = 0``).  The loops mirror
``_kernels_py`` operation for operation.
"""
import numpy as np


def recurrence_eval(const double[::1] a, const double[::1] b,
                    const double[::1] c, const double[::1] t):
    """Return ``P_K(t)`` for every entry of ``t``."""
    cdef Py_ssize_t npts = t.shape[0]
    cdef Py_ssize_t K = a.shape[0]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k
    cdef double x, p0, p1, p2
    cdef double x1, x2, x3, q0, q1, r0, r1, u0, u1, ak, bk, ck
    cdef Py_ssize_t blocked = npts - npts % 4
    with nogil:
        # four independent chains per pass hide the latency of the recurrence
        for i in range(0, blocked, 4):
            x, x1, x2, x3 = t[i], t[i + 1], t[i + 2], t[i + 3]
            p0 = q0 = r0 = u0 = 0.0
            p1 = q1 = r1 = u1 = 1.0
            for k in range(K):
                ak = a[k]
                bk = b[k]
                ck = c[k]
                p2 = (ak * x + bk) * p1 - ck * p0
                p0 = p1
                p1 = p2
                p2 = (ak * x1 + bk) * q1 - ck * q0
                q0 = q1
                q1 = p2
                p2 = (ak * x2 + bk) * r1 - ck * r0
                r0 = r1
                r1 = p2
                p2 = (ak * x3 + bk) * u1 - ck * u0
                u0 = u1
                u1 = p2
            o[i] = p1
            o[i + 1] = q1
            o[i + 2] = r1
            o[i + 3] = u1
        for i in range(blocked, npts):
            x = t[i]
            p0 = 0.0
            p1 = 1.0
            for k in range(K):
                p2 = (a[k] * x + b[k]) * p1 - c[k] * p0
                p0 = p1
                p1 = p2
            o[i] = p1
    return out


def recurrence_series(const double[::1] a, const double[::1] b,
                      const double[::1] c, const double[::1] coef,
                      const double[::1] t):
    """Return ``sum_m coef[m] * P_m(t)`` for ``m = 0..len(coef)-1``."""
    cdef Py_ssize_t npts = t.shape[0]
    cdef Py_ssize_t M = coef.shape[0]
    if M == 0:
        return np.zeros(npts, dtype=np.float64)
    if a.shape[0] < M - 1:
        raise ValueError("not enough recurrence coefficients for the series")
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k
    cdef double x, p0, p1, p2, s
    cdef double x1, x2, x3, q0, q1, r0, r1, u0, u1, s1, s2, s3, ak, bk, ck, ek
    cdef Py_ssize_t blocked = npts - npts % 4
    with nogil:
        for i in range(0, blocked, 4):
            x, x1, x2, x3 = t[i], t[i + 1], t[i + 2], t[i + 3]
            p0 = q0 = r0 = u0 = 0.0
            p1 = q1 = r1 = u1 = 1.0
            s = s1 = s2 = s3 = coef[0]
            for k in range(M - 1):
                ak = a[k]
                bk = b[k]
                ck = c[k]
                ek = coef[k + 1]
                p2 = (ak * x + bk) * p1 - ck * p0
                p0 = p1
                p1 = p2
                s = s + ek * p1
                p2 = (ak * x1 + bk) * q1 - ck * q0
                q0 = q1
                q1 = p2
                s1 = s1 + ek * q1
                p2 = (ak * x2 + bk) * r1 - ck * r0
                r0 = r1
                r1 = p2
                s2 = s2 + ek * r1
                p2 = (ak * x3 + bk) * u1 - ck * u0
                u0 = u1
                u1 = p2
                s3 = s3 + ek * u1
            o[i] = s
            o[i + 1] = s1
            o[i + 2] = s2
            o[i + 3] = s3
        for i in range(blocked, npts):
            x = t[i]
            p0 = 0.0
            p1 = 1.0
            s = coef[0] * p1
            for k in range(M - 1):
                p2 = (a[k] * x + b[k]) * p1 - c[k] * p0
                p0 = p1
                p1 = p2
                s = s + coef[k + 1] * p1
            o[i] = s
    return out
