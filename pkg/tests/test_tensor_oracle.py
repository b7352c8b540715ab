import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vortexmoduli import symring as sr
from vortexmoduli import tensor_oracle as to
from vortexmoduli.symring import RingParams


def test_pullback_eta_d2():
    p = RingParams(2, 1)
    t = to.pullback(sr.eta(p))
    beta = 2 * p.g + 1
    assert dict(t.terms) == {(beta, 0): Fraction(1), (0, beta): Fraction(1)}


def test_pullback_eta_power_kills_diagonal():
    p = RingParams(2, 1)
    t = to.pullback(sr.eta(p) ** 2)
    beta = 2 * p.g + 1
    assert dict(t.terms) == {(beta, beta): Fraction(2)}


def test_pullback_sigma_d1():
    p = RingParams(1, 1)
    t = to.pullback(sr.sigma(p))
    assert dict(t.terms) == {(3,): Fraction(1)}
    assert to.oracle_integrate(t) == 1


def test_odd_square_and_anticommute():
    p = RingParams(2, 1)
    a11 = to.TensorClass(p, {(1, 0): Fraction(1)})
    a22 = to.TensorClass(p, {(0, 2): Fraction(1)})
    assert to.oracle_multiply(a11, a11).is_zero()
    ab = to.oracle_multiply(a11, a22)
    ba = to.oracle_multiply(a22, a11)
    assert ab == ba.scale(-1) and not ab.is_zero()


def test_alpha_pair_gives_beta():
    p = RingParams(1, 1)
    a1 = to.TensorClass(p, {(1,): Fraction(1)})
    a2 = to.TensorClass(p, {(2,): Fraction(1)})
    assert dict(to.oracle_multiply(a1, a2).terms) == {(3,): Fraction(1)}
    assert dict(to.oracle_multiply(a2, a1).terms) == {(3,): Fraction(-1)}


def test_oracle_integrals():
    assert to.oracle_integrate(to.pullback(sr.eta(RingParams(3, 1)) ** 3)) == 1
    p22 = RingParams(2, 2)
    assert to.oracle_integrate(
        to.pullback(sr.multiply(sr.eta(p22), sr.sigma(p22)))) == 2
    p43 = RingParams(4, 3)
    cls = sr.multiply(sr.eta(p43) ** 2, sr.sigma(p43) ** 2)
    assert to.oracle_integrate(to.pullback(cls)) == 6


def test_integrate_requires_full_top_tuple():
    p = RingParams(2, 1)
    assert to.oracle_integrate(to.pullback(sr.eta(p))) == 0


def _draw_class(draw, params):
    cls = sr.zero(params)
    n_terms = draw(st.integers(1, 2))
    for _ in range(n_terms):
        h = draw(st.integers(0, params.d))
        term = sr.eta(params) ** h
        if params.g:
            idx = draw(st.lists(st.integers(1, 2 * params.g), unique=True, max_size=3))
            for j in sorted(idx):
                term = sr.multiply(term, sr.xi(params, j))
        coeff = draw(st.fractions(max_denominator=4))
        cls = cls + term.scale(coeff)
    return cls


@st.composite
def _class_pairs(draw):
    params = RingParams(draw(st.integers(1, 3)), draw(st.integers(0, 2)))
    return params, _draw_class(draw, params), _draw_class(draw, params)


@settings(max_examples=40, deadline=None)
@given(_class_pairs())
def test_pullback_is_ring_homomorphism(data):
    _params, a, b = data
    lhs = to.pullback(sr.multiply(a, b))
    rhs = to.oracle_multiply(to.pullback(a), to.pullback(b))
    assert lhs == rhs


@pytest.mark.parametrize("d,g", [(2, 1), (3, 2)])
def test_symmetric_group_invariance(d, g):
    params = RingParams(d, g)
    classes = [sr.eta(params), sr.sigma(params)]
    if g >= 1:
        classes.append(sr.xi(params, 1))
        classes.append(sr.multiply(sr.eta(params), sr.xi(params, 2 * g)))
    for cls in classes:
        t = to.pullback(cls)
        for perm in itertools.permutations(range(d)):
            assert to.permute_factors(t, perm) == t, (cls, perm)


def test_ring_agrees_with_oracle_beyond_small_grid():
    # exhaustive over all top-half monomials at d=5, g=3: cheap insurance
    # that the normal form does not degrade past the small parameter grid
    params = RingParams(5, 3)
    for k in range(0, 7):
        for s in itertools.combinations(range(1, 7), k):
            for h in range(0, (10 - k) // 2 + 1):
                cls = sr.eta(params) ** h
                t = to.unit_tensor(params)
                for _ in range(h):
                    t = to.oracle_multiply(t, to.generator_eta(params))
                for j in s:
                    cls = sr.multiply(cls, sr.xi(params, j))
                    t = to.oracle_multiply(t, to.generator_xi(params, j))
                assert sr.integrate(cls) == to.oracle_integrate(t), (h, s)


def test_permute_factors_signs():
    # swapping two odd slots flips the sign of a pure alpha x alpha term
    p = RingParams(2, 1)
    t = to.TensorClass(p, {(1, 2): Fraction(1)})
    swapped = to.permute_factors(t, (1, 0))
    assert dict(swapped.terms) == {(2, 1): Fraction(-1)}
    with pytest.raises(ValueError):
        to.permute_factors(t, (0, 0))
