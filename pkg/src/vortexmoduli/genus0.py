"""Concrete realization of the Grassmannian embedding of vortex moduli on
the projective line, with exact rational arithmetic throughout.

A moduli point is an n-tuple pair: a split bundle E = O(d_1) + ... + O(d_r)
together with a matrix of binary forms realizing the section map O^n -> E.
Twisting the dual inclusion by O(delta) embeds the section space of the
twisted dual as a subspace of n copies of the degree-delta forms; its
Plucker coordinates are the maximal minors of any basis matrix.  The inverse
direction recovers the section matrix from the subspace (componentwise gcds
for rank one), and symbolic sweeps in a parameter t measure the degrees of
the two standard curves inside the symmetric power.

Everything here is pure and exact: Fractions for numbers, coefficient
tuples for forms, no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .moduli_numerics import ParameterError

__all__ = [
    "BinaryForm",
    "BinaryFormPair",
    "SubspaceBasis",
    "DeltaTooSmallError",
    "RankDeficientError",
    "ReconstructionError",
    "embed_pair",
    "plucker",
    "projective_normalize",
    "reconstruct",
    "curve_degree",
    "plucker_sweep",
    "smallest_working_delta",
    "divisor_form",
]


class DeltaTooSmallError(ValueError):
    """The twist is below the effective threshold for this pair."""


class RankDeficientError(ValueError):
    """The section matrix does not have generic rank r."""


class ReconstructionError(ValueError):
    """The subspace does not arise from a valid pair."""


# ---------------------------------------------------------------------------
# binary forms: homogeneous in (x, y); coefficients[i] multiplies x^(deg-i) y^i


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coefficients: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ParameterError("form degree must be >= 0")
        if len(self.coefficients) != self.degree + 1:
            raise ParameterError("need degree+1 coefficients")
        object.__setattr__(self, "coefficients",
                           tuple(Fraction(c) for c in self.coefficients))

    @staticmethod
    def monomial(degree: int, y_power: int, coeff=1) -> "BinaryForm":
        c = [Fraction(0)] * (degree + 1)
        c[y_power] = Fraction(coeff)
        return BinaryForm(degree, tuple(c))

    @staticmethod
    def zero(degree: int) -> "BinaryForm":
        return BinaryForm(degree, (Fraction(0),) * (degree + 1))

    def __bool__(self) -> bool:
        return any(self.coefficients)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ParameterError("cannot add forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in
                                             zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-1) * other

    def __neg__(self) -> "BinaryForm":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            deg = self.degree + other.degree
            out = [Fraction(0)] * (deg + 1)
            for i, a in enumerate(self.coefficients):
                if not a:
                    continue
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
            return BinaryForm(deg, tuple(out))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, const) -> "BinaryForm":
        c = Fraction(const)
        return BinaryForm(self.degree, tuple(c * a for a in self.coefficients))

    def y_valuation(self) -> int:
        """Multiplicity of y as a factor (degree+1 for the zero form)."""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return self.degree + 1

    def dehomogenized(self) -> tuple:
        """Coefficients of f(u, 1) ascending in u, trailing zeros stripped."""
        return _strip(tuple(reversed(self.coefficients)))

    def monic(self) -> "BinaryForm":
        """Scale so the first nonzero coefficient is 1."""
        for c in self.coefficients:
            if c:
                return self.scale(1 / c)
        return self

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            xs = "x^%d" % (self.degree - i) if self.degree - i > 1 else \
                ("x" if self.degree - i == 1 else "")
            ys = "y^%d" % i if i > 1 else ("y" if i == 1 else "")
            mono = "*".join(p for p in (xs, ys) if p) or "1"
            parts.append("%s*%s" % (c, mono) if abs(c) != 1 or mono == "1"
                         else ("-" + mono if c < 0 else mono))
        return " + ".join(parts)


def _strip(coeffs: tuple) -> tuple:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return coeffs[:end]


def _poly_divmod(a: tuple, b: tuple):
    """divmod of ascending-coefficient rational polynomials."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * inv
        if c:
            quo[shift] = c
            for i, bc in enumerate(b):
                rem[shift + i] -= c * bc
    return tuple(quo), _strip(tuple(rem))


def _poly_gcd(a: tuple, b: tuple) -> tuple:
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = tuple(c * inv for c in a)
    return a


def _rehomogenize(u_coeffs: tuple, y_val: int) -> BinaryForm:
    m = len(u_coeffs) - 1
    coeffs = (Fraction(0),) * y_val + tuple(reversed(u_coeffs))
    return BinaryForm(m + y_val, coeffs)


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms (the zero form acts as an identity)."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    yv = min(f.y_valuation(), g.y_valuation())
    common = _poly_gcd(f.dehomogenized(), g.dehomogenized())
    return _rehomogenize(common, yv).monic()


def form_div_exact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact quotient f/g; raises ReconstructionError if division leaves a rest."""
    if not g:
        raise ZeroDivisionError("division by the zero form")
    if not f:
        return BinaryForm.zero(f.degree - g.degree)
    yv_f, yv_g = f.y_valuation(), g.y_valuation()
    if yv_f < yv_g:
        raise ReconstructionError("form division is not exact")
    quo, rem = _poly_divmod(f.dehomogenized(), g.dehomogenized())
    if rem:
        raise ReconstructionError("form division is not exact")
    return _rehomogenize(quo, yv_f - yv_g)


def divisor_form(points: Sequence[tuple], multiplicities: Sequence[int]) -> BinaryForm:
    """Form vanishing at [a:b] with the given multiplicities: prod (b*x - a*y)^m."""
    out = BinaryForm(0, (Fraction(1),))
    for (a, b), m in zip(points, multiplicities):
        lin = BinaryForm(1, (Fraction(b), -Fraction(a)))
        if not lin:
            raise ParameterError("(0:0) is not a point of the projective line")
        for _ in range(m):
            out = out * lin
    return out


# ---------------------------------------------------------------------------
# pairs and subspaces


@dataclass(frozen=True)
class BinaryFormPair:
    """Matrix of forms realizing the section map O^n -> O(d_1)+...+O(d_r).

    Row i holds n forms of common degree d_i with sum(d_i) = d.  For rank
    one this is a single row; ``from_section`` builds that case directly.
    """

    n: int
    r: int
    d: int
    fs_matrix: tuple

    def __post_init__(self):
        if self.r < 1 or self.n < self.r:
            raise ParameterError("need n >= r >= 1")
        rows = tuple(tuple(row) for row in self.fs_matrix)
        object.__setattr__(self, "fs_matrix", rows)
        if len(rows) != self.r or any(len(row) != self.n for row in rows):
            raise ParameterError("fs_matrix must be r x n")
        for row in rows:
            degs = {f.degree for f in row}
            if len(degs) != 1:
                raise ParameterError("entries of a row must share a degree")
        if sum(row[0].degree for row in rows) != self.d:
            raise ParameterError("row degrees must sum to d")

    @staticmethod
    def from_section(forms: Sequence[BinaryForm]) -> "BinaryFormPair":
        forms = tuple(forms)
        return BinaryFormPair(len(forms), 1, forms[0].degree, (forms,))

    def row_degrees(self) -> tuple:
        return tuple(row[0].degree for row in self.fs_matrix)

    def generic_rank(self) -> int:
        """Rank of the matrix over the function field, via exact minors."""
        for k in range(min(self.r, self.n), 0, -1):
            for rows in itertools.combinations(range(self.r), k):
                sub = [self.fs_matrix[i] for i in rows]
                for cols in itertools.combinations(range(self.n), k):
                    if _det([[sub[i][j] for j in cols] for i in range(k)]):
                        return k
        return 0

    def canonical(self) -> "BinaryFormPair":
        """Representative with the first nonzero coefficient scaled to 1."""
        for row in self.fs_matrix:
            for f in row:
                for c in f.coefficients:
                    if c:
                        scale = 1 / c
                        rows = tuple(tuple(fm.scale(scale) for fm in rw)
                                     for rw in self.fs_matrix)
                        return BinaryFormPair(self.n, self.r, self.d, rows)
        return self


@dataclass(frozen=True)
class SubspaceBasis:
    """Reduced-echelon basis of a subspace of n copies of degree-delta forms."""

    ambient_dim: int
    basis: tuple
    n: int
    delta: int

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.basis)
        object.__setattr__(self, "basis", rows)
        if self.ambient_dim != self.n * (self.delta + 1):
            raise ParameterError("ambient_dim must equal n*(delta+1)")
        if any(len(row) != self.ambient_dim for row in rows):
            raise ParameterError("basis vectors must have ambient length")
        if rows and len(_rref(rows)) != len(rows):
            raise ParameterError("basis vectors must be linearly independent")

    def component_forms(self, vec_index: int) -> tuple:
        """The n degree-delta forms making up one basis vector."""
        row = self.basis[vec_index]
        w = self.delta + 1
        return tuple(BinaryForm(self.delta, row[j * w:(j + 1) * w])
                     for j in range(self.n))


def _rref(rows) -> list:
    """Reduced row echelon form over the rationals; zero rows dropped."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(ncols):
        sel = next((i for i in range(pivot_row, len(mat)) if mat[i][col]), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [c * inv for c in mat[pivot_row]]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [tuple(r) for r in mat[:pivot_row] if any(r)]


def _det(matrix) -> object:
    """Determinant by first-row expansion; entries need +, *, scalar mul."""
    k = len(matrix)
    if k == 1:
        return matrix[0][0]
    total = None
    for j in range(k):
        if not matrix[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(sub)
        if j % 2:
            term = -1 * term
        total = term if total is None else total + term
    if total is None:
        zero = matrix[0][0] * 0
        for row in matrix[1:]:
            zero = zero * row[0]
        return zero
    return total


def _maximal_minors(rows) -> list:
    """All k x k minors of a k x N matrix, columns in lexicographic order."""
    k, ncols = len(rows), len(rows[0])
    memo = {}

    def minor(i, cols):
        if i == k:
            return None  # empty product, handled by caller
        key = (i, cols)
        if key in memo:
            return memo[key]
        total = None
        for idx, c in enumerate(cols):
            entry = rows[i][c]
            if not entry:
                continue
            rest = cols[:idx] + cols[idx + 1:]
            if rest:
                sub = minor(i + 1, rest)
                term = None if sub is None else entry * sub
            else:
                term = entry
            if term is None:
                continue
            if idx % 2:
                term = -1 * term
            total = term if total is None else total + term
        memo[key] = total
        return total

    out = []
    zero = rows[0][0] * 0
    for cols in itertools.combinations(range(ncols), k):
        val = minor(0, cols)
        out.append(zero if val is None else val)
    return out


# ---------------------------------------------------------------------------
# the embedding, its Plucker coordinates, and reconstruction


def embed_pair(pair: BinaryFormPair, delta: int) -> SubspaceBasis:
    """Subspace of n-tuples of degree-delta forms cut out by the pair.

    The subspace is the image of the multiplication map sending a tuple of
    forms psi_i of degree delta - d_i to the row vector psi * fs_matrix; its
    dimension must equal r*(delta+1) - d, or the twist is too small.
    """
    if delta < 1:
        raise ParameterError("delta must be >= 1")
    expected = pair.r * (delta + 1) - pair.d
    if expected < 0:
        raise ParameterError("delta below usable range: expected dimension negative")
    if pair.generic_rank() != pair.r:
        raise RankDeficientError("pair violates the generic rank invariant")
    if any(dg > delta for dg in pair.row_degrees()):
        raise DeltaTooSmallError("delta too small for this pair")
    width = delta + 1
    vectors = []
    for row in pair.fs_matrix:
        e = delta - row[0].degree
        for k in range(e + 1):
            mono = BinaryForm.monomial(e, k)
            vec = []
            for f in row:
                vec.extend((mono * f).coefficients)
            vectors.append(tuple(vec))
    reduced = _rref(vectors)
    if len(reduced) != expected:
        raise DeltaTooSmallError("delta too small for this pair")
    return SubspaceBasis(pair.n * width, tuple(reduced), pair.n, delta)


def plucker(basis: SubspaceBasis) -> tuple:
    """Plucker coordinates: all maximal minors of the basis matrix.

    Well defined up to overall scale; changing the basis by an invertible
    combination rescales every coordinate by the same determinant.
    """
    if not basis.basis:
        raise ParameterError("Plucker coordinates need a nonempty basis")
    return tuple(_maximal_minors([list(r) for r in basis.basis]))


def projective_normalize(coords: Sequence[Fraction]) -> tuple:
    """Scale so the first nonzero coordinate is 1 (for comparing points)."""
    for c in coords:
        if c:
            return tuple(Fraction(v) / c for v in coords)
    raise ParameterError("zero vector has no projective normalization")


def reconstruct(basis: SubspaceBasis, n: int, delta: int, r: int = 1) -> BinaryFormPair:
    """Recover the pair whose image under ``embed_pair`` is the subspace.

    Rank one only: the section tuple is read off from componentwise form
    gcds, then cross-scaled through one exact division so all components
    share a single scalar.  The result is canonically scaled, and verified
    by re-embedding.  Higher rank would need a saturation algorithm and is
    intentionally not provided.
    """
    if r != 1:
        raise NotImplementedError(
            "reconstruction is implemented for rank one; higher rank is only "
            "covered by dimension checks")
    if n != basis.n or delta != basis.delta:
        raise ParameterError("n/delta inconsistent with the basis")
    k = len(basis.basis)
    if k == 0:
        raise ReconstructionError("empty basis")
    d = (delta + 1) - k
    if d < 0:
        raise ReconstructionError("subspace too large for a rank-1 pair")
    vectors = [basis.component_forms(i) for i in range(k)]
    gcds = []
    for j in range(n):
        g: Optional[BinaryForm] = None
        for vec in vectors:
            if vec[j]:
                g = vec[j] if g is None else form_gcd(g, vec[j])
        gcds.append(g)
    pivot = next((j for j, g in enumerate(gcds) if g is not None), None)
    if pivot is None:
        raise ReconstructionError("zero subspace")
    s_pivot = gcds[pivot]
    if s_pivot.degree != d:
        raise ReconstructionError("basis not saturating to a rank-1 subsheaf")
    ref = next(vec for vec in vectors if vec[pivot])
    sections = []
    for j in range(n):
        if j == pivot:
            sections.append(s_pivot)
        elif gcds[j] is None:
            sections.append(BinaryForm.zero(d))
        else:
            sections.append(form_div_exact(s_pivot * ref[j], ref[pivot]))
    pair = BinaryFormPair.from_section(sections).canonical()
    check = embed_pair(pair, delta)
    if check.basis != basis.basis:
        raise ReconstructionError("basis not saturating to a rank-1 subsheaf")
    return pair


def smallest_working_delta(pair: BinaryFormPair, delta_max: int = 64) -> int:
    """Least twist at which the embedding has the expected dimension.

    RankDeficientError propagates: no twist fixes a bad pair.
    """
    for delta in range(1, delta_max + 1):
        try:
            embed_pair(pair, delta)
            return delta
        except (DeltaTooSmallError, ParameterError):
            continue
    raise DeltaTooSmallError("no working delta up to %d" % delta_max)


# ---------------------------------------------------------------------------
# symbolic sweeps in a parameter t


class TPoly:
    """Univariate polynomial in the sweep parameter t over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(tuple(Fraction(c) for c in coeffs))

    @staticmethod
    def const(c) -> "TPoly":
        return TPoly((Fraction(c),))

    @staticmethod
    def t_power(k: int, coeff=1) -> "TPoly":
        return TPoly((Fraction(0),) * k + (Fraction(coeff),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "TPoly") -> "TPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPoly(out)

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-1) * other

    def __neg__(self) -> "TPoly":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, TPoly):
            if not self or not other:
                return TPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return TPoly(out)
        return TPoly(tuple(Fraction(other) * c for c in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self:
            return "TPoly(0)"
        return "TPoly(%s)" % ", ".join(str(c) for c in self.coeffs)


def _tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    return TPoly(_poly_gcd(a.coeffs, b.coeffs))


def _tpoly_div(a: TPoly, b: TPoly) -> TPoly:
    quo, rem = _poly_divmod(a.coeffs, b.coeffs)
    if rem:
        raise ValueError("inexact polynomial division")
    return TPoly(quo)


def _sweep_section(family: str, d: int, p: Fraction) -> list:
    """Descending-x coefficients of the swept section, as polynomials in t.

    d0 family: (x - t*y)^d.  d1 family: (x - p*y) * (x - t*y)^(d-1).
    """
    if family == "d0":
        if d < 1:
            raise ParameterError("d0 family needs d >= 1")
        return [TPoly.t_power(i, Fraction((-1) ** i * comb(d, i)))
                for i in range(d + 1)]
    if family == "d1":
        if d < 2:
            raise ParameterError("d1 family needs d >= 2")
        inner = [TPoly.t_power(i, Fraction((-1) ** i * comb(d - 1, i)))
                 for i in range(d)]
        out = [TPoly() for _ in range(d + 1)]
        for i, c in enumerate(inner):
            out[i] = out[i] + c                      # x * c
            out[i + 1] = out[i + 1] + (-p) * c       # -p*y * c
        return out
    raise ParameterError("family must be 'd0' or 'd1'")


def plucker_sweep(family: str, d: int, delta: int, p=Fraction(2)) -> tuple:
    """Plucker coordinates of the swept curve as polynomials in t, with any
    common polynomial factor divided out."""
    if delta < d:
        raise DeltaTooSmallError("delta too small for this pair")
    section = _sweep_section(family, d, Fraction(p))
    e = delta - d
    rows = []
    for k in range(e + 1):
        row = [TPoly() for _ in range(delta + 1)]
        for i, c in enumerate(section):
            row[k + i] = c
        rows.append(row)
    minors = _maximal_minors(rows)
    nonzero = [m for m in minors if m]
    if not nonzero:
        raise ParameterError("degenerate sweep: all coordinates vanish")
    common = nonzero[0]
    for m in nonzero[1:]:
        common = _tpoly_gcd(common, m)
        if common.degree == 0:
            break
    if common.degree > 0:
        minors = [(_tpoly_div(m, common) if m else m) for m in minors]
    return tuple(minors)


def curve_degree(family: str, d: int, delta: int, p=Fraction(2)) -> int:
    """Degree of the image of the swept curve: the maximal t-degree over the
    cleared Plucker coordinates."""
    coords = plucker_sweep(family, d, delta, p)
    return max(m.degree for m in coords if m)
