"""Closed-form dimension and parameter bookkeeping for the vortex moduli
spaces: Riemann-Roch counts, Grassmannian and Plucker ambient dimensions,
the moduli dimension formula, and the stability inequality.

All counting functions are exact integer arithmetic; only the physical
stability data (coupling, tau, area) uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, pi

__all__ = [
    "ParameterError",
    "EmbeddingParams",
    "PhysicalParams",
    "GrassmannData",
    "rr_dim",
    "grassmann_params",
    "moduli_dim",
    "tangent_dim_local",
    "StabilityReport",
    "stability_check",
]

# floats enter only through tau; the stability inequality is strict, so a
# tau computed to sit exactly at the critical value must not count as stable
CRITICAL_TAU_RTOL = 1e-12


class ParameterError(ValueError):
    """Raised when parameters leave the range where a formula is asserted."""


@dataclass(frozen=True)
class EmbeddingParams:
    """Numerical type (n, r, d, g) plus the twist data (ell, delta).

    ``ell`` is the degree of the auxiliary ample line bundle and ``delta``
    the twisting power.  No effective lower bound for delta is known in
    general, so delta is caller input; the constructor only enforces the
    necessary inequality ell*delta >= d/r + g - 1.
    """

    n: int
    r: int
    d: int
    g: int
    ell: int
    delta: int

    def __post_init__(self):
        if self.r < 1:
            raise ParameterError("rank r must be >= 1")
        if self.n < self.r:
            raise ParameterError("need n >= r")
        if self.d < 0:
            raise ParameterError("degree d must be >= 0")
        if self.g < 0:
            raise ParameterError("genus g must be >= 0")
        if self.ell < 1 or self.delta < 1:
            raise ParameterError("ell and delta must be >= 1")
        if self.r * self.ell * self.delta < self.d + self.r * (self.g - 1):
            raise ParameterError(
                "ell*delta = %d is below the required bound d/r + g - 1"
                % (self.ell * self.delta))

    @property
    def elldelta(self) -> int:
        return self.ell * self.delta


@dataclass(frozen=True)
class PhysicalParams:
    """Coupling e^2, symmetry-breaking scale tau, and total area."""

    e2: float
    tau: float
    vol: float

    def __post_init__(self):
        if self.e2 <= 0:
            raise ParameterError("e2 must be positive")
        if self.vol <= 0:
            raise ParameterError("vol must be positive")


def rr_dim(p: EmbeddingParams) -> int:
    """dim H^0 of the twisted dual bundle: r*ell*delta - d + r*(1-g)."""
    return p.r * p.elldelta - p.d + p.r * (1 - p.g)


@dataclass(frozen=True)
class GrassmannData:
    total_dim: int
    subspace_dim: int
    gr_dim: int
    plucker_ambient_dim: int


def grassmann_params(p: EmbeddingParams) -> GrassmannData:
    """Dimensions of the ambient Grassmannian and its Plucker target.

    The section space of the twisted bundle has dimension n*(ell*delta+1-g),
    which is only exact above the canonical degree; hence the precondition
    ell*delta > 2g - 2.
    """
    if p.elldelta <= 2 * p.g - 2:
        raise ParameterError("need ell*delta > 2g-2 for an exact section count")
    total = p.n * (p.elldelta + 1 - p.g)
    sub = p.r * (p.elldelta - p.g + 1) - p.d
    if sub < 0:
        raise ParameterError("negative subspace dimension: delta below usable range")
    gr = sub * (total - sub)
    ambient = comb(total, sub) - 1
    return GrassmannData(total, sub, gr, ambient)


def moduli_dim(n: int, r: int, d: int, g: int) -> int:
    """Moduli dimension n*d + r*(r-n)*(g-1).

    Asserted when d > r*(g-1), or unconditionally in the local case n = r.
    """
    if n < r:
        raise ParameterError("need n >= r")
    if not (d > r * (g - 1) or n == r):
        raise ParameterError(
            "dimension formula not asserted for n > r with d <= r*(g-1)")
    return n * d + r * (r - n) * (g - 1)


def tangent_dim_local(r: int, d: int) -> int:
    """Tangent dimension at a local (n = r) moduli point: sections of a
    torsion quotient of length d tensored with a rank-r bundle."""
    if r < 1:
        raise ParameterError("rank r must be >= 1")
    if d < 0:
        raise ParameterError("degree d must be >= 0")
    return r * d


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    margin: float
    critical_tau: float


def stability_check(phys: PhysicalParams, d: int, r: int = 1) -> StabilityReport:
    """Strict stability inequality tau * e^2 * Vol > 4*pi*d.

    ``critical_tau`` is where the inequality saturates and vortices dissolve.
    A tau within relative tolerance of the critical value reports unstable.
    """
    if r < 1:
        raise ParameterError("rank r must be >= 1")
    if d < 0:
        raise ParameterError("degree d must be >= 0")
    lhs = phys.tau * phys.e2 * phys.vol
    margin = lhs - 4.0 * pi * d
    critical = 4.0 * pi * d / (phys.e2 * phys.vol)
    stable = margin > CRITICAL_TAU_RTOL * max(abs(lhs), 4.0 * pi * d)
    return StabilityReport(stable, margin, critical)
