"""Kahler classes on the symmetric power: the L2 class of the vortex metric,
Fubini-Study pullback coefficients recovered from curve degrees, the
quantization condition, and symplectic volumes.

Cohomological coefficients are exact rationals; the physical inputs (e^2,
tau, Vol) are floats, and the one place the two meet (the representability
comparison) converts the quantization number q to an integer only when it is
within 1e-9 of one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, pi
from typing import Optional, Union

from .moduli_numerics import ParameterError, PhysicalParams
from .symring import RingParams, eta, integrate, multiply, sigma

__all__ = [
    "KahlerClass2",
    "CurveDegrees",
    "l2_class",
    "curve_degrees",
    "fs_coefficients",
    "quantization",
    "QuantizationReport",
    "representability",
    "RepresentabilityReport",
    "symplectic_volume",
]

Q_INTEGER_ATOL = 1e-9

Scalar = Union[Fraction, float, int]


@dataclass(frozen=True)
class KahlerClass2:
    """A degree-2 class c_eta * eta + c_sigma * sigma."""

    c_eta: Scalar
    c_sigma: Scalar

    @property
    def exact(self) -> bool:
        return not (isinstance(self.c_eta, float) or isinstance(self.c_sigma, float))


@dataclass(frozen=True)
class CurveDegrees:
    """Projective degrees of the images of the two test curves."""

    d0: int
    d1: int

    def __post_init__(self):
        if self.d0 < 0 or self.d1 < 0:
            raise ParameterError("curve degrees must be nonnegative")


def l2_class(phys: PhysicalParams, d: int) -> KahlerClass2:
    """Kahler class of the L2 metric on the vortex moduli space:

        (pi*tau*Vol - 4*pi^2*d/e^2) * eta + (2*pi^2/e^2) * sigma
    """
    if d < 0:
        raise ParameterError("degree d must be >= 0")
    c_eta = pi * phys.tau * phys.vol - 4.0 * pi ** 2 * d / phys.e2
    c_sigma = 2.0 * pi ** 2 / phys.e2
    return KahlerClass2(c_eta, c_sigma)


def curve_degrees(d: int, g: int, elldelta: int) -> CurveDegrees:
    """d_j = (d-j) * (ell*delta + (d-j-1)*(g-1) - j) for j = 0, 1."""
    if d < 2:
        raise ParameterError("curve degrees need d >= 2")
    if elldelta < 1:
        raise ParameterError("ell*delta must be >= 1")
    vals = [(d - j) * (elldelta + (d - j - 1) * (g - 1) - j) for j in (0, 1)]
    return CurveDegrees(vals[0], vals[1])


def fs_coefficients(d: int, g: int, degrees: CurveDegrees) -> KahlerClass2:
    """Recover the Fubini-Study pullback class from the two curve degrees.

    Solves the 2x2 pairing system <C_eta*eta + C_sigma*sigma, Sigma_j> = d_j
    with the pairing values <eta, Sigma_j> = d-j and <sigma, Sigma_j> =
    (d-j)^2 * g, exactly over the rationals.
    """
    if d < 2:
        raise ParameterError("need d >= 2")
    if g < 1:
        raise ParameterError("need g >= 1 (at genus 0 the two generators collapse)")
    a00, a01 = Fraction(d), Fraction(d * d * g)
    a10, a11 = Fraction(d - 1), Fraction((d - 1) * (d - 1) * g)
    det = a00 * a11 - a01 * a10
    if det == 0:
        raise ParameterError("singular pairing system")
    b0, b1 = Fraction(degrees.d0), Fraction(degrees.d1)
    c_eta = (b0 * a11 - a01 * b1) / det
    c_sigma = (a00 * b1 - b0 * a10) / det
    return KahlerClass2(c_eta, c_sigma)


@dataclass(frozen=True)
class QuantizationReport:
    q: float
    is_integer: bool


def quantization(phys: PhysicalParams) -> QuantizationReport:
    """q = tau * e^2 * Vol / (4*pi), flagged integral within 1e-9."""
    q = phys.tau * phys.e2 * phys.vol / (4.0 * pi)
    return QuantizationReport(q, abs(q - round(q)) <= Q_INTEGER_ATOL)


@dataclass(frozen=True)
class RepresentabilityReport:
    q: float
    elldelta_theorem: Optional[int]
    elldelta_ratio: Optional[Fraction]
    consistent: bool


def representability(phys: PhysicalParams, d: int, g: int) -> RepresentabilityReport:
    """Compare the two candidate values of ell*delta that would make the
    Fubini-Study pullback class proportional to the L2 class.

    The representability statement requires integral q and gives
    ell*delta = q + g - 1.  Matching the coefficient ratio of the L2 class
    against (ell*delta - d - g + 1, 1) instead gives
    ell*delta = 2*(q - d) + d + g - 1.  The two agree exactly when q = d;
    both are reported and no choice is made between them.
    """
    if d < 2:
        raise ParameterError("need d >= 2")
    if g < 1:
        raise ParameterError("need g >= 1")
    rep = quantization(phys)
    if not rep.is_integer:
        return RepresentabilityReport(rep.q, None, None, False)
    q = round(rep.q)
    theorem = q + g - 1
    ratio = Fraction(2 * (q - d) + d + g - 1)
    return RepresentabilityReport(rep.q, theorem, ratio, theorem == ratio)


def symplectic_volume(cls: KahlerClass2, d: int, g: int) -> Scalar:
    """Volume integral of (c_eta*eta + c_sigma*sigma)^d / d!.

    Both generators are even, so the binomial expansion applies; each mixed
    integral comes out of the exact ring model, never from a closed form.
    """
    params = RingParams(d, g)
    e, s = eta(params), sigma(params)
    total = Fraction(0) if cls.exact else 0.0
    for k in range(0, min(d, g) + 1):
        weight = integrate(multiply(e ** (d - k), s ** k))
        if not weight:
            continue
        term = comb(d, k) * weight * cls.c_eta ** (d - k) * cls.c_sigma ** k
        total = total + term
    if cls.exact:
        return Fraction(total, 1) / factorial(d)
    return total / factorial(d)
