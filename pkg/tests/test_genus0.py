import random
from fractions import Fraction

import pytest

from vortexmoduli.genus0 import (
    BinaryForm,
    BinaryFormPair,
    DeltaTooSmallError,
    RankDeficientError,
    ReconstructionError,
    SubspaceBasis,
    TPoly,
    curve_degree,
    divisor_form,
    embed_pair,
    form_div_exact,
    form_gcd,
    plucker,
    plucker_sweep,
    projective_normalize,
    reconstruct,
    smallest_working_delta,
)
from vortexmoduli.moduli_numerics import ParameterError

F = Fraction


def form(*coeffs):
    return BinaryForm(len(coeffs) - 1, tuple(F(c) for c in coeffs))


def test_form_arithmetic():
    x, y = form(1, 0), form(0, 1)
    assert x * y == form(0, 1, 0)
    assert (x + y).coefficients == (F(1), F(1))
    assert str(form(1, -1)) == "x + -y"
    with pytest.raises(ParameterError):
        form(1, 0) + form(1, 0, 0)
    with pytest.raises(ParameterError):
        BinaryForm(2, (1, 0))


def test_form_gcd_and_division():
    f = form(1, 0) * form(1, 0) * form(0, 1) * form(1, -1)   # x^2 y (x-y)
    g = form(1, 0) * form(0, 1) * form(0, 1)                 # x y^2
    got = form_gcd(f, g)
    assert got == (form(1, 0) * form(0, 1)).monic()
    assert form_div_exact(f, form(1, 0)) == form(1, 0) * form(0, 1) * form(1, -1)
    with pytest.raises(ReconstructionError):
        form_div_exact(f, form(1, 1))
    # gcd with the zero form is the other argument, made monic
    assert form_gcd(BinaryForm.zero(2), f) == f.monic()


def test_divisor_form():
    f = divisor_form([(0, 1), (1, 1)], [2, 1])   # x^2 * (x - y)
    assert f == form(1, 0) * form(1, 0) * form(1, -1)


def test_embed_examples():
    # s = x*y, delta = 3: basis {x^2 y, x y^2}
    basis = embed_pair(BinaryFormPair.from_section([form(0, 1, 0)]), 3)
    assert basis.basis == ((F(0), F(1), F(0), F(0)), (F(0), F(0), F(1), F(0)))
    # s = x^d at delta = d: one-dimensional
    basis = embed_pair(BinaryFormPair.from_section([form(1, 0, 0, 0)]), 3)
    assert len(basis.basis) == 1
    # constants with n=2, d=0: dimension delta + 1
    pair = BinaryFormPair.from_section([form(1), form(2)])
    assert len(embed_pair(pair, 3).basis) == 4


@pytest.mark.parametrize("d", range(1, 5))
@pytest.mark.parametrize("extra", range(0, 4))
def test_embed_dimension_formula(d, extra):
    rng = random.Random(1000 * d + extra)
    coeffs = [F(rng.randint(-5, 5)) for _ in range(d + 1)]
    if not any(coeffs):
        coeffs[0] = F(1)
    delta = d + extra
    basis = embed_pair(BinaryFormPair.from_section([BinaryForm(d, tuple(coeffs))]), delta)
    assert len(basis.basis) == delta + 1 - d
    assert basis.ambient_dim == delta + 1


def test_embed_errors():
    with pytest.raises(DeltaTooSmallError):
        embed_pair(BinaryFormPair.from_section([form(1, 0, 0)]), 1)
    rows = ((form(1, 0), form(0, 1)), (form(2, 0), form(0, 2)))
    with pytest.raises(RankDeficientError):
        embed_pair(BinaryFormPair(2, 2, 2, rows), 3)
    with pytest.raises(ParameterError):
        BinaryFormPair(2, 2, 3, rows)  # degrees sum to 2, not 3


def test_embed_rank_two():
    rows = ((form(1, 0), BinaryForm.zero(1)), (BinaryForm.zero(1), form(0, 1)))
    pair = BinaryFormPair(2, 2, 2, rows)
    assert pair.generic_rank() == 2
    basis = embed_pair(pair, 2)
    assert len(basis.basis) == 2 * 3 - 2
    # unbalanced splitting needs a larger twist
    rows = ((form(1), form(1)), (form(1, 0, 0), form(0, 0, 1)))
    unb = BinaryFormPair(2, 2, 2, rows)
    with pytest.raises(DeltaTooSmallError):
        embed_pair(unb, 1)
    assert len(embed_pair(unb, 2).basis) == 4


def test_plucker_basis_independence():
    pair = BinaryFormPair.from_section([form(1, 2, 1)])
    basis = embed_pair(pair, 4)
    raw = plucker(basis)
    # mix the basis rows by an invertible rational matrix
    r0, r1, r2 = basis.basis
    mixed = (
        tuple(2 * a + b for a, b in zip(r0, r1)),
        tuple(a - b for a, b in zip(r1, r2)),
        tuple(F(1, 3) * a for a in r2),
    )
    mixed_basis = SubspaceBasis(basis.ambient_dim, mixed, basis.n, basis.delta)
    assert projective_normalize(plucker(mixed_basis)) == projective_normalize(raw)


def test_plucker_single_vector():
    basis = embed_pair(BinaryFormPair.from_section([form(1, 0)]), 1)
    assert plucker(basis) == (F(1), F(0))


def test_reconstruct_round_trip_examples():
    s = form(1, 0) * form(1, 0) * form(0, 1) * form(1, -1)  # x^2 y (x - y)
    pair = BinaryFormPair.from_section([s])
    rec = reconstruct(embed_pair(pair, 6), 1, 6)
    assert rec == pair.canonical()
    mono = BinaryFormPair.from_section([form(1, 0, 0, 0)])
    assert reconstruct(embed_pair(mono, 3), 1, 3) == mono.canonical()


def test_reconstruct_multi_component():
    sections = [form(1, 0) * form(1, -2), form(0, 1) * form(1, 1)]
    pair = BinaryFormPair.from_section(sections)
    basis = embed_pair(pair, 5)
    rec = reconstruct(basis, 2, 5)
    assert rec == pair.canonical()
    # with a zero component
    pair = BinaryFormPair.from_section([form(1, 2, 1), BinaryForm.zero(2)])
    rec = reconstruct(embed_pair(pair, 4), 2, 4)
    assert rec == pair.canonical()


def test_reconstruct_random_round_trips():
    rng = random.Random(4242)
    for _ in range(40):
        d = rng.randint(1, 6)
        coeffs = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d + 1)]
        if not any(coeffs):
            coeffs[d // 2] = F(1)
        pair = BinaryFormPair.from_section([BinaryForm(d, tuple(coeffs))])
        rec = reconstruct(embed_pair(pair, d + 2), 1, d + 2)
        assert rec == pair.canonical()


def test_reconstruct_rejects_bad_subspace():
    # a subspace that is not of the form h * s: {x^2, y^2} inside delta = 2
    bad = SubspaceBasis(3, ((F(1), F(0), F(0)), (F(0), F(0), F(1))), 1, 2)
    with pytest.raises(ReconstructionError):
        reconstruct(bad, 1, 2)


def test_reconstruct_higher_rank_unimplemented():
    rows = ((form(1, 0), BinaryForm.zero(1)), (BinaryForm.zero(1), form(0, 1)))
    basis = embed_pair(BinaryFormPair(2, 2, 2, rows), 2)
    with pytest.raises(NotImplementedError):
        reconstruct(basis, 2, 2, r=2)


def test_smallest_working_delta():
    pair = BinaryFormPair.from_section([form(1, 0, 0, 0, 0)])
    assert smallest_working_delta(pair) == 4


def test_curve_degree_values():
    assert curve_degree("d0", 1, 2) == 2
    assert curve_degree("d0", 2, 3) == 4
    assert curve_degree("d1", 2, 3) == 2
    for d in range(1, 5):
        for delta in range(d + 1, d + 5):
            assert curve_degree("d0", d, delta) == d * (delta - d + 1)
            if d >= 2:
                assert curve_degree("d1", d, delta) == (d - 1) * (delta - d + 1)


def test_curve_degree_validation():
    with pytest.raises(ParameterError):
        curve_degree("d2", 2, 4)
    with pytest.raises(ParameterError):
        curve_degree("d1", 1, 4)
    with pytest.raises(DeltaTooSmallError):
        curve_degree("d0", 3, 2)


def test_sweep_coordinates_have_no_common_factor():
    coords = plucker_sweep("d1", 3, 5)
    nonzero = [c for c in coords if c]
    g = nonzero[0]
    from vortexmoduli.genus0 import _tpoly_gcd
    for c in nonzero[1:]:
        g = _tpoly_gcd(g, c)
    assert g.degree == 0


def test_tpoly_arithmetic():
    t = TPoly.t_power(1)
    p = (t * t - TPoly.const(1)) * (t - TPoly.const(2))
    assert p.degree == 3
    assert (p - p).degree == -1
    assert 2 * t == t + t
