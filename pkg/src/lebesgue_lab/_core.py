"""Backend selection for the recurrence kernels.

The compiled extension is used when it was built; otherwise, or when
``LEBESGUE_LAB_PURE`` is set to a non-empty value, the numpy twin is used.
"""
import os

if os.environ.get("LEBESGUE_LAB_PURE"):
    from ._kernels_py import recurrence_eval, recurrence_series

    BACKEND = "python"
else:
    try:
        from ._kernels import recurrence_eval, recurrence_series

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import recurrence_eval, recurrence_series

        BACKEND = "python"

__all__ = ["BACKEND", "recurrence_eval", "recurrence_series"]
