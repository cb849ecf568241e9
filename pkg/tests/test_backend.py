import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lebesgue_lab import _core, _kernels_py
from lebesgue_lab.specfn import recurrence_coefficients

compiled = pytest.importorskip("lebesgue_lab._kernels", reason="compiled extension not built")


@settings(max_examples=40, deadline=None)
@given(a=st.floats(-0.9, 8.0), b=st.floats(-0.9, 8.0), k=st.integers(1, 200), m=st.integers(1, 64))
def test_compiled_matches_numpy_eval(a, b, k, m):
    A, B, C = recurrence_coefficients(a, b, k)
    t = np.linspace(-1.0, 1.0, m)
    np.testing.assert_allclose(compiled.recurrence_eval(A, B, C, t), _kernels_py.recurrence_eval(A, B, C, t),
                               rtol=1e-13, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(-0.9, 8.0), b=st.floats(-0.9, 8.0), n=st.integers(0, 120), seed=st.integers(0, 2 ** 32 - 1))
def test_compiled_matches_numpy_series(a, b, n, seed):
    A, B, C = recurrence_coefficients(a, b, n)
    coef = np.random.default_rng(seed).standard_normal(n + 1)
    t = np.linspace(-1.0, 1.0, 33)
    np.testing.assert_allclose(compiled.recurrence_series(A, B, C, coef, t),
                               _kernels_py.recurrence_series(A, B, C, coef, t), rtol=1e-12, atol=1e-12)


def test_empty_series():
    A, B, C = recurrence_coefficients(0.0, 0.0, 0)
    t = np.zeros(3)
    np.testing.assert_array_equal(compiled.recurrence_series(A, B, C, np.empty(0), t), 0.0)
    np.testing.assert_array_equal(_kernels_py.recurrence_series(A, B, C, np.empty(0), t), 0.0)


def test_short_coefficients_rejected():
    A, B, C = recurrence_coefficients(0.0, 0.0, 2)
    with pytest.raises(ValueError):
        _kernels_py.recurrence_series(A, B, C, np.ones(5), np.zeros(2))
    with pytest.raises(ValueError):
        compiled.recurrence_series(A, B, C, np.ones(5), np.zeros(2))


def test_default_backend_is_compiled():
    if os.environ.get("LEBESGUE_LAB_PURE"):
        pytest.skip("pure backend forced by environment")
    assert _core.BACKEND == "cython"


def test_pure_env_forces_python():
    code = ("import lebesgue_lab as L; from lebesgue_lab.lebesgue import lebesgue_exact; "
            "from lebesgue_lab.manifold import make_manifold; "
            "print(L.BACKEND, repr(lebesgue_exact(make_manifold('sphere', 3), 40).exact))")
    env = dict(os.environ, LEBESGUE_LAB_PURE="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("LEBESGUE_LAB_PURE")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    b1, v1 = pure.stdout.split()
    b2, v2 = fast.stdout.split()
    assert b1 == "python" and b2 == "cython"
    assert float(v1) == pytest.approx(float(v2), rel=1e-13)
