"""Lebesgue constants of Fourier-Laplace projections on compact two-point
homogeneous spaces, with the multiplier machinery for sharp convergence rates.
"""
__version__ = "0.1.0"

from ._core import BACKEND
from .errors import DomainError, QuadratureError, RootCountError, TruncationError, ValidationError
from .lebesgue import (
    LebesgueResult,
    asymptotic_constant,
    asymptotic_constant_gamma_form,
    fejer_circle_constant,
    lebesgue_exact,
    lebesgue_oracle,
    xirong_comparison,
)
from .manifold import Family, ManifoldSpec, make_manifold
from .multiplier import MultiplierSeq, cesaro_kernel_l1, kolmogorov_rate, tail_kernel_l1
from .specfn import JacobiParams, jacobi_eval, jacobi_roots

__all__ = [
    "BACKEND",
    "DomainError",
    "Family",
    "JacobiParams",
    "LebesgueResult",
    "ManifoldSpec",
    "MultiplierSeq",
    "QuadratureError",
    "RootCountError",
    "TruncationError",
    "ValidationError",
    "asymptotic_constant",
    "asymptotic_constant_gamma_form",
    "cesaro_kernel_l1",
    "fejer_circle_constant",
    "jacobi_eval",
    "jacobi_roots",
    "kolmogorov_rate",
    "lebesgue_exact",
    "lebesgue_oracle",
    "make_manifold",
    "tail_kernel_l1",
    "xirong_comparison",
]
