"""Exact model of the rational cohomology ring of the d-th symmetric power
of a closed genus-g surface.

The ring is generated by a degree-2 class ``eta`` and degree-1 classes
``xi_1, ..., xi_2g`` which supercommute by parity.  The derived classes

    sigma_j = xi_j * xi_{j+g}   (1 <= j <= g),      sigma = sum_j sigma_j

span, together with eta, the (1,1) integral lattice where Kahler classes
live.  Beyond supercommutativity, the ideal of relations is generated by the
instances

    eta^r * prod_{i in I1} xi_i * prod_{i in I2} xi_{i+g}
          * prod_{j in J} (eta - sigma_j)  =  0

for disjoint I1, I2, J in {1..g} and r >= d - |I1| - |I2| - 2|J| + 1.

Normal form eliminates every monomial carrying a complete xi-pair (or too
many factors overall) in favour of higher eta-powers, so a basis of the
quotient is the set of monomials eta^h * xi_S with h + |S| <= d.  In top
degree 2d only eta^d survives, which is the fundamental class; integration
just reads off its coefficient.

All coefficients are exact rationals; there is no floating point in this
module.  Values are immutable after construction and every operation is a
pure function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

__all__ = [
    "RingParams",
    "Monomial",
    "CohomologyClass",
    "zero",
    "unit",
    "eta",
    "xi",
    "sigma_j",
    "sigma",
    "multiply",
    "normal_form",
    "integrate",
    "pd_sigma0",
    "pairing",
    "parse_class",
]


@dataclass(frozen=True)
class RingParams:
    """Degree d of the symmetric power (the vortex number) and the genus g."""

    d: int
    g: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.g < 0:
            raise ValueError("g must be >= 0")


@dataclass(frozen=True, order=True)
class Monomial:
    """A product eta^eta_power * xi_{i1} * ... * xi_{ik}, i1 < ... < ik."""

    eta_power: int
    xi_indices: tuple[int, ...]

    def __post_init__(self):
        if self.eta_power < 0:
            raise ValueError("eta_power must be >= 0")
        if any(a >= b for a, b in zip(self.xi_indices, self.xi_indices[1:])):
            raise ValueError("xi_indices must be strictly increasing")

    @property
    def degree(self) -> int:
        return 2 * self.eta_power + len(self.xi_indices)

    def sort_key(self):
        return (self.degree, self.eta_power, self.xi_indices)


def _merge_xi(s: tuple[int, ...], t: tuple[int, ...]):
    """Merge two strictly increasing index tuples with the Koszul sign.

    Returns (sign, merged) or None when an index repeats (odd square = 0).
    The sign counts inversions between the two blocks, one per odd-odd swap.
    """
    if set(s) & set(t):
        return None
    inversions = 0
    for a in s:
        for b in t:
            if a > b:
                inversions += 1
    merged = tuple(sorted(s + t))
    sign = -1 if inversions % 2 else 1
    return sign, merged


def _mono_mul(m1: Monomial, m2: Monomial):
    """Raw graded product of two monomials: (sign, monomial) or None."""
    merged = _merge_xi(m1.xi_indices, m2.xi_indices)
    if merged is None:
        return None
    sign, xi_all = merged
    return sign, Monomial(m1.eta_power + m2.eta_power, xi_all)


def _raw_mul_terms(t1: dict, t2: dict) -> dict:
    """Bilinear product of term maps, no relation reduction."""
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            prod = _mono_mul(m1, m2)
            if prod is None:
                continue
            sign, m = prod
            c = out.get(m, Fraction(0)) + sign * c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def _split_pairs(xi_indices: tuple[int, ...], g: int):
    """Split index set into (pairs P, lone lows A, lone highs B).

    P, A, B are subsets of {1..g}: j is in P when both xi_j and xi_{j+g}
    occur, in A when only xi_j does, in B when only xi_{j+g} does.
    """
    lows = {i for i in xi_indices if i <= g}
    highs = {i - g for i in xi_indices if i > g}
    pairs = lows & highs
    return tuple(sorted(pairs)), tuple(sorted(lows - pairs)), tuple(sorted(highs - pairs))


def _normalize_terms(params: RingParams, terms: Mapping[Monomial, Fraction]) -> dict:
    """Reduce a term map to normal form.

    Worklist reduction: monomials of cohomological degree above 2d drop out;
    monomials with h + |A| + |B| + |P| > d are annihilated outright by a
    pair-free relation instance; monomials still carrying a complete pair are
    rewritten through the instance (r = h, I1 = A, I2 = B, J = P), which
    trades one pair for a higher eta-power.  Terminates because every rewrite
    strictly decreases the pair count.
    """
    d, g = params.d, params.g
    result: dict[Monomial, Fraction] = {}
    work = [(m, Fraction(c)) for m, c in terms.items()]
    while work:
        m, c = work.pop()
        if not c:
            continue
        if m.degree > 2 * d:
            continue
        pairs, lows, highs = _split_pairs(m.xi_indices, g)
        if m.eta_power + len(lows) + len(highs) + len(pairs) > d:
            continue
        if m.eta_power + len(m.xi_indices) <= d:
            acc = result.get(m, Fraction(0)) + c
            if acc:
                result[m] = acc
            else:
                result.pop(m, None)
            continue
        # Build the relation instance whose sigma-complete term is +/- m.
        free = tuple(sorted(lows + tuple(b + g for b in highs)))
        rel = {Monomial(m.eta_power, free): Fraction(1)}
        for j in pairs:
            binom = {
                Monomial(1, ()): Fraction(1),
                Monomial(0, (j, j + g)): Fraction(-1),
            }
            rel = _raw_mul_terms(rel, binom)
        rho = rel.pop(m)
        scale = -c / rho
        for mm, cc in rel.items():
            work.append((mm, scale * cc))
    return result


@dataclass(frozen=True)
class CohomologyClass:
    """A rational cohomology class in normal form.

    ``terms`` maps normal-form monomials to nonzero rational coefficients.
    Instances are immutable; arithmetic returns new classes.
    """

    params: RingParams
    terms: Mapping[Monomial, Fraction]

    @staticmethod
    def from_terms(params: RingParams, terms: Mapping[Monomial, Fraction]) -> "CohomologyClass":
        return CohomologyClass(params, _normalize_terms(params, terms))

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m, Fraction(0)) + c
            if acc:
                out[m] = acc
            else:
                out.pop(m, None)
        return CohomologyClass(self.params, out)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-1) * other

    def __neg__(self) -> "CohomologyClass":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "CohomologyClass":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = unit(self.params)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohomologyClass)
                and self.params == other.params
                and dict(self.terms) == dict(other.terms))

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    def scale(self, const) -> "CohomologyClass":
        c = Fraction(const)
        if not c:
            return zero(self.params)
        return CohomologyClass(self.params, {m: c * v for m, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return self.degrees() <= {degree}

    def _check(self, other: "CohomologyClass"):
        if self.params != other.params:
            raise ValueError("mismatched ring parameters: %r vs %r"
                             % (self.params, other.params))

    def __str__(self) -> str:
        return format_class(self)

    __repr__ = __str__


def zero(params: RingParams) -> CohomologyClass:
    return CohomologyClass(params, {})


def unit(params: RingParams) -> CohomologyClass:
    return CohomologyClass(params, {Monomial(0, ()): Fraction(1)})


def eta(params: RingParams) -> CohomologyClass:
    return CohomologyClass.from_terms(params, {Monomial(1, ()): Fraction(1)})


def xi(params: RingParams, j: int) -> CohomologyClass:
    if not 1 <= j <= 2 * params.g:
        raise ValueError("xi index %d out of range 1..%d" % (j, 2 * params.g))
    return CohomologyClass.from_terms(params, {Monomial(0, (j,)): Fraction(1)})


def sigma_j(params: RingParams, j: int) -> CohomologyClass:
    if not 1 <= j <= params.g:
        raise ValueError("sigma index %d out of range 1..%d" % (j, params.g))
    return CohomologyClass.from_terms(
        params, {Monomial(0, (j, j + params.g)): Fraction(1)})


def sigma(params: RingParams) -> CohomologyClass:
    out = zero(params)
    for j in range(1, params.g + 1):
        out = out + sigma_j(params, j)
    return out


def multiply(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Graded-commutative product, reduced to normal form."""
    a._check(b)
    return CohomologyClass.from_terms(a.params, _raw_mul_terms(dict(a.terms), dict(b.terms)))


def normal_form(a: CohomologyClass) -> CohomologyClass:
    """Idempotent: classes are stored in normal form already."""
    return CohomologyClass.from_terms(a.params, a.terms)


def integrate(a: CohomologyClass) -> Fraction:
    """Evaluate against the fundamental class.

    Returns the normal-form coefficient of eta^d; in particular classes of
    degree other than 2d integrate to zero.
    """
    top = Monomial(a.params.d, ())
    return Fraction(a.terms.get(top, Fraction(0)))


def pd_sigma0(params: RingParams) -> CohomologyClass:
    """Poincare dual of the diagonal curve {d*x} inside the symmetric power:

        d*(d + (g-1)(d-1)) * eta^(d-1)  -  d*(d-1) * eta^(d-2) * sigma
    """
    d, g = params.d, params.g
    if d <= 1:
        raise ValueError("pd_sigma0 requires d > 1")
    lead = (eta(params) ** (d - 1)).scale(d * (d + (g - 1) * (d - 1)))
    tail = multiply(eta(params) ** (d - 2), sigma(params)).scale(d * (d - 1))
    return lead - tail


def pairing(a: CohomologyClass, curve: int) -> Fraction:
    """Duality pairing of a degree-2 class against the curve class Sigma_j.

    ``curve`` is 0 for the diagonal curve {d*x} and 1 for {p + (d-1)*x}.
    The Sigma_0 pairing goes through the Poincare dual; Sigma_1 pulls back
    along x -> p + (d-1)x, under which eta -> (d-1)*beta and
    xi_i -> (d-1)*alpha_i.
    """
    if curve not in (0, 1):
        raise ValueError("curve must be 0 or 1")
    if a.is_zero():
        return Fraction(0)
    if not a.is_homogeneous(2):
        raise ValueError("pairing is defined for degree-2 classes only")
    d, g = a.params.d, a.params.g
    if curve == 0:
        if d == 1:
            return integrate(a)
        return integrate(multiply(a, pd_sigma0(a.params)))
    total = Fraction(0)
    for m, c in a.terms.items():
        if m.eta_power == 1:
            total += c * (d - 1)
        else:
            i, k = m.xi_indices
            if k == i + g:
                total += c * (d - 1) ** 2
    return total


# ---------------------------------------------------------------------------
# canonical text form: "c*eta^a*xi[i,j,...] + ..."

_FRACTION_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def _format_monomial(m: Monomial) -> str:
    factors = []
    if m.eta_power == 1:
        factors.append("eta")
    elif m.eta_power > 1:
        factors.append("eta^%d" % m.eta_power)
    if m.xi_indices:
        factors.append("xi[%s]" % ",".join(str(i) for i in m.xi_indices))
    return "*".join(factors)


def format_class(a: CohomologyClass) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for m in sorted(a.terms, key=Monomial.sort_key):
        c = a.terms[m]
        mono = _format_monomial(m)
        coeff = format_fraction(abs(c))
        body = coeff if not mono else ("%s*%s" % (coeff, mono) if abs(c) != 1 else mono)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def _parse_factor(tok: str, params: RingParams) -> CohomologyClass:
    tok = tok.strip()
    base, caret, exp = tok.partition("^")
    power = 1
    if caret:
        if not re.match(r"^\d+$", exp):
            raise ValueError("bad exponent in %r" % tok)
        power = int(exp)
    base = base.strip()
    if base == "eta":
        return eta(params) ** power
    if base == "sigma":
        return sigma(params) ** power
    m = re.match(r"^xi\[([0-9,\s]+)\]$", base)
    if m:
        out = unit(params)
        for idx in m.group(1).split(","):
            out = multiply(out, xi(params, int(idx)))
        return out ** power if power != 1 else out
    m = re.match(r"^sigma\[(\d+)\]$", base)
    if m:
        return sigma_j(params, int(m.group(1))) ** power
    raise ValueError("cannot parse factor %r" % tok)


def parse_class(text: str, params: RingParams) -> CohomologyClass:
    """Parse the canonical text form (also accepts sigma / sigma[j] factors)."""
    text = text.strip()
    if not text:
        raise ValueError("empty class expression")
    if text == "0":
        return zero(params)
    # split into signed terms at top level (no parentheses in the grammar)
    terms = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    total = zero(params)
    for term in terms:
        sign = Fraction(1)
        if term.startswith("-"):
            sign = Fraction(-1)
            term = term[1:]
        elif term.startswith("+"):
            term = term[1:]
        if not term:
            raise ValueError("dangling sign in %r" % text)
        coeff = sign
        cls = unit(params)
        for tok in term.split("*"):
            if _FRACTION_RE.match(tok):
                coeff *= Fraction(tok)
            else:
                cls = multiply(cls, _parse_factor(tok, params))
        total = total + cls.scale(coeff)
    return total
