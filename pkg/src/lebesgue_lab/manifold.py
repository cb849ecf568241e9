"""The five families of compact two-point homogeneous spaces.

Each family is described by the exponents (sigma, rho) of its area function;
the Jacobi parameters follow as alpha = (sigma + rho - 1)/2 and
beta = (rho - 1)/2, so that alpha = (d - 2)/2 in every case.  Zonal
functions of degree k are multiples of P_k^{(alpha,beta)}(cos 2 lambda theta).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .specfn import JacobiParams, jacobi_endpoint, jacobi_norm_sq, log_beta, log_gamma


class Family(enum.Enum):
    SPHERE = "sphere"
    REAL_PROJECTIVE = "real-projective"
    COMPLEX_PROJECTIVE = "complex-projective"
    QUATERNIONIC_PROJECTIVE = "quaternionic-projective"
    CAYLEY = "cayley"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {
            "s": "sphere",
            "rp": "real-projective",
            "cp": "complex-projective",
            "hp": "quaternionic-projective",
            "cay": "cayley",
        }
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(
            f"unknown family {name!r}; expected one of {[m.value for m in cls]}"
        )


ADMISSIBLE = {
    Family.SPHERE: "d = 2, 3, 4, ...",
    Family.REAL_PROJECTIVE: "d = 2, 3, 4, ...",
    Family.COMPLEX_PROJECTIVE: "d = 4, 6, 8, ...",
    Family.QUATERNIONIC_PROJECTIVE: "d = 8, 12, 16, ...",
    Family.CAYLEY: "d = 16",
}


def _exponents(family: Family, d: int):
    if family in (Family.SPHERE, Family.REAL_PROJECTIVE):
        return 0, d - 1
    if family is Family.COMPLEX_PROJECTIVE:
        return d - 2, 1
    if family is Family.QUATERNIONIC_PROJECTIVE:
        return d - 4, 3
    return 8, 7


def _admissible(family: Family, d: int, allow_circle: bool) -> bool:
    if family is Family.SPHERE:
        return d >= 2 or (allow_circle and d == 1)
    if family is Family.REAL_PROJECTIVE:
        return d >= 2
    if family is Family.COMPLEX_PROJECTIVE:
        return d >= 4 and d % 2 == 0
    if family is Family.QUATERNIONIC_PROJECTIVE:
        return d >= 8 and d % 4 == 0
    return d == 16


@dataclass(frozen=True)
class ManifoldSpec:
    """Family tag, real dimension and derived Jacobi data.

    ``chi`` is beta + 1/2 for the families with a single Jacobi kernel and 0
    for the real projective spaces, whose asymptotic constant has no cosine
    factor.  ``lambda_times_L`` records the metric scale (lambda = value / L);
    no computation depends on it.
    """

    family: Family
    d: int
    sigma: float
    rho: float
    alpha: float
    beta: float
    chi: float
    projective_even: bool
    lambda_times_L: float

    @property
    def c(self) -> float:
        """Total mass of (1 - t)^alpha (1 + t)^beta on (-1, 1)."""
        return math.exp((self.alpha + self.beta + 1) * math.log(2.0) + log_beta(self.alpha + 1, self.beta + 1))

    @property
    def label(self) -> str:
        return f"{self.family.value}-{self.d}"

    def degree(self, k: int) -> int:
        """Polynomial degree carried by zonal index ``k``."""
        return 2 * k if self.projective_even else k


def make_manifold(family, d: int, *, allow_circle: bool = False) -> ManifoldSpec:
    """Build a :class:`ManifoldSpec`, validating the dimension for the family.

    ``allow_circle`` admits the sphere with d = 1, which is only used by the
    circle (Dirichlet kernel) path.
    """
    family = Family.parse(family)
    if int(d) != d:
        raise ValidationError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if not _admissible(family, d, allow_circle):
        raise ValidationError(
            f"dimension d={d} is not admissible for {family.value}; admissible: {ADMISSIBLE[family]}"
        )
    sigma, rho = _exponents(family, d)
    alpha = (sigma + rho - 1) / 2
    beta = (rho - 1) / 2
    rp = family is Family.REAL_PROJECTIVE
    return ManifoldSpec(
        family=family,
        d=d,
        sigma=float(sigma),
        rho=float(rho),
        alpha=alpha,
        beta=beta,
        chi=0.0 if rp else beta + 0.5,
        projective_even=rp,
        lambda_times_L=math.pi / 4 if rp else math.pi / 2,
    )


def tabulated_chi(spec: ManifoldSpec):
    """Cosine exponent as commonly tabulated for the constant's integrand.

    Agrees with ``spec.chi`` except for quaternionic projective spaces, where
    the table lists 2 while beta + 1/2 = 3/2.  Exact norms converge to the
    constant built from 3/2; this value is kept for comparison reports.
    """
    if spec.family is Family.REAL_PROJECTIVE:
        return None
    if spec.family is Family.QUATERNIONIC_PROJECTIVE:
        return 2.0
    return spec.chi


def zonal_coefficient(spec: ManifoldSpec, k: int) -> float:
    """C_k = c P_k(1) / ||P_k||^2; for real projective spaces ``k`` selects P_{2k}."""
    p = JacobiParams(spec.alpha, spec.beta, spec.degree(k))
    return spec.c * jacobi_endpoint(p) / jacobi_norm_sq(p)


def eigenspace_dim(spec: ManifoldSpec, k: int) -> float:
    """Dimension of the k-th eigenspace, C_k P_k(1)."""
    p = JacobiParams(spec.alpha, spec.beta, spec.degree(k))
    return zonal_coefficient(spec, k) * jacobi_endpoint(p)


def laplace_eigenvalue(spec: ManifoldSpec, k: int) -> float:
    """-m(m + alpha + beta + 1) with m the polynomial degree of zonal index k."""
    m = spec.degree(k)
    return -m * (m + spec.alpha + spec.beta + 1)


def sphere_area(m: int) -> float:
    """Surface area of the unit sphere in R^m, 2 pi^{m/2} / Gamma(m/2)."""
    return 2.0 * math.pi ** (m / 2) / math.exp(log_gamma(m / 2))


def area_function(spec: ManifoldSpec, theta: float, L_value: float) -> float:
    """Area of the geodesic sphere of radius ``theta`` when the diameter is ``L_value``."""
    if not L_value > 0:
        raise DomainError("diameter must be positive")
    if not 0 < theta < L_value:
        raise DomainError(f"theta must lie in (0, {L_value}), got {theta!r}")
    lam = spec.lambda_times_L / L_value
    omega = sphere_area(int(spec.sigma + spec.rho + 1))
    return (
        omega
        * lam ** (-spec.sigma)
        * (2 * lam) ** (-spec.rho)
        * math.sin(lam * theta) ** spec.sigma
        * math.sin(2 * lam * theta) ** spec.rho
    )


def admissible_manifolds(d_max: int = 16):
    """Every admissible (family, d) pair with d <= d_max, in a fixed order."""
    out = []
    for family in Family:
        for d in range(2, d_max + 1):
            if _admissible(family, d, False):
                out.append(make_manifold(family, d))
    return out
