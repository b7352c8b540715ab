"""Brute-force ground truth for the symmetric-power ring: the d-fold graded
tensor power of H*(Sigma).

A factor of H*(Sigma) has basis {1, alpha_1, ..., alpha_2g, beta} with
alpha_i alpha_j = 0 unless j = i +- g, alpha_i alpha_{i+g} = -alpha_{i+g}
alpha_i = beta, and beta annihilating everything of positive degree.  A
tensor class is a rational combination of d-tuples of these basis elements;
products pick up Koszul signs when odd factors move past each other.

The symmetrization map sends eta to sum_i beta_i and xi_j to sum_k
alpha_{j,k}; integration extracts the beta x ... x beta coefficient and
divides by d!, so that the image of eta^d integrates to 1.

Dense and slow by design: this module is the oracle that symring is checked
against, so simplicity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .symring import CohomologyClass, RingParams

__all__ = [
    "TensorClass",
    "unit_tensor",
    "generator_eta",
    "generator_xi",
    "pullback",
    "oracle_multiply",
    "oracle_integrate",
    "permute_factors",
]

# factor basis encoding: 0 is the unit, 1..2g are the alpha_j, 2g+1 is beta


def _factor_degree(e: int, g: int) -> int:
    if e == 0:
        return 0
    if e == 2 * g + 1:
        return 2
    return 1


def _factor_mul(e1: int, e2: int, g: int):
    """Product of two factor basis elements: (coeff, element) or None."""
    if e1 == 0:
        return 1, e2
    if e2 == 0:
        return 1, e1
    beta = 2 * g + 1
    if e1 == beta or e2 == beta:
        return None
    if e2 == e1 + g:
        return 1, beta
    if e1 == e2 + g:
        return -1, beta
    return None


@dataclass(frozen=True)
class TensorClass:
    """Rational combination of d-tuples of factor basis elements."""

    params: RingParams
    terms: Mapping[tuple[int, ...], Fraction]

    def __add__(self, other: "TensorClass") -> "TensorClass":
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            acc = out.get(t, Fraction(0)) + c
            if acc:
                out[t] = acc
            else:
                out.pop(t, None)
        return TensorClass(self.params, out)

    def __sub__(self, other: "TensorClass") -> "TensorClass":
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, TensorClass):
            return oracle_multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, const) -> "TensorClass":
        c = Fraction(const)
        if not c:
            return TensorClass(self.params, {})
        return TensorClass(self.params, {t: c * v for t, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorClass)
                and self.params == other.params
                and dict(self.terms) == dict(other.terms))

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    def _check(self, other: "TensorClass"):
        if self.params != other.params:
            raise ValueError("mismatched ring parameters")


def unit_tensor(params: RingParams) -> TensorClass:
    return TensorClass(params, {(0,) * params.d: Fraction(1)})


def generator_eta(params: RingParams) -> TensorClass:
    """Image of eta: one beta in each slot in turn."""
    beta = 2 * params.g + 1
    terms = {}
    for i in range(params.d):
        t = [0] * params.d
        t[i] = beta
        terms[tuple(t)] = Fraction(1)
    return TensorClass(params, terms)


def generator_xi(params: RingParams, j: int) -> TensorClass:
    """Image of xi_j: one alpha_j in each slot in turn."""
    if not 1 <= j <= 2 * params.g:
        raise ValueError("xi index %d out of range 1..%d" % (j, 2 * params.g))
    terms = {}
    for k in range(params.d):
        t = [0] * params.d
        t[k] = j
        terms[tuple(t)] = Fraction(1)
    return TensorClass(params, terms)


def _tuple_mul(s: tuple[int, ...], t: tuple[int, ...], g: int):
    """Slotwise product of basis tuples with the Koszul sign, or None."""
    d = len(s)
    # suffix degree sums of s: moving t_i into slot i passes s_{i+1..d}
    suffix = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix[i] = suffix[i + 1] + _factor_degree(s[i], g)
    coeff = 1
    out = []
    for i in range(d):
        if _factor_degree(t[i], g) % 2 and suffix[i + 1] % 2:
            coeff = -coeff
        prod = _factor_mul(s[i], t[i], g)
        if prod is None:
            return None
        c, e = prod
        coeff *= c
        out.append(e)
    return coeff, tuple(out)


def oracle_multiply(a: TensorClass, b: TensorClass) -> TensorClass:
    a._check(b)
    g = a.params.g
    out: dict[tuple[int, ...], Fraction] = {}
    for s, cs in a.terms.items():
        for t, ct in b.terms.items():
            prod = _tuple_mul(s, t, g)
            if prod is None:
                continue
            sign, tup = prod
            acc = out.get(tup, Fraction(0)) + sign * cs * ct
            if acc:
                out[tup] = acc
            else:
                out.pop(tup, None)
    return TensorClass(a.params, out)


def pullback(a: CohomologyClass) -> TensorClass:
    """Ring homomorphism determined by eta -> sum beta_i, xi_j -> sum alpha_{j,k}."""
    params = a.params
    eta_t = generator_eta(params)
    total = TensorClass(params, {})
    for mono, coeff in a.terms.items():
        term = unit_tensor(params)
        for _ in range(mono.eta_power):
            term = oracle_multiply(term, eta_t)
        for j in mono.xi_indices:
            term = oracle_multiply(term, generator_xi(params, j))
        total = total + term.scale(coeff)
    return total


def oracle_integrate(a: TensorClass) -> Fraction:
    """Coefficient of beta x ... x beta divided by d!."""
    d, g = a.params.d, a.params.g
    top = (2 * g + 1,) * d
    return Fraction(a.terms.get(top, Fraction(0))) / factorial(d)


def permute_factors(a: TensorClass, perm: tuple[int, ...]) -> TensorClass:
    """Apply a permutation of the tensor slots with Koszul bookkeeping.

    ``perm[i]`` is the slot the i-th factor moves to.  The sign is the parity
    of the permutation restricted to odd-degree entries.
    """
    d, g = a.params.d, a.params.g
    if sorted(perm) != list(range(d)):
        raise ValueError("not a permutation of 0..%d" % (d - 1))
    out: dict[tuple[int, ...], Fraction] = {}
    for t, c in a.terms.items():
        new = [0] * d
        for i, e in enumerate(t):
            new[perm[i]] = e
        # inversions among odd entries: pairs i<j whose images swap order
        sign = 1
        odd_slots = [i for i, e in enumerate(t) if _factor_degree(e, g) % 2]
        for ai in range(len(odd_slots)):
            for bi in range(ai + 1, len(odd_slots)):
                if perm[odd_slots[ai]] > perm[odd_slots[bi]]:
                    sign = -sign
        tup = tuple(new)
        acc = out.get(tup, Fraction(0)) + sign * c
        if acc:
            out[tup] = acc
        else:
            out.pop(tup, None)
    return TensorClass(a.params, out)
