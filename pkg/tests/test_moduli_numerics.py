from math import pi

import pytest

from vortexmoduli.moduli_numerics import (
    EmbeddingParams,
    ParameterError,
    PhysicalParams,
    grassmann_params,
    moduli_dim,
    rr_dim,
    stability_check,
    tangent_dim_local,
)


def test_rr_dim_values():
    assert rr_dim(EmbeddingParams(1, 1, 2, 2, 1, 5)) == 2
    assert rr_dim(EmbeddingParams(1, 1, 0, 0, 1, 1)) == 2  # delta=1 on the line
    assert rr_dim(EmbeddingParams(2, 2, 3, 1, 1, 4)) == 5
    # the constants-only case: trivial bundle wants ell*delta = 0, which the
    # parameter type excludes; check the formula directly at the boundary
    assert 1 * 1 * 1 - 0 + 1 * (1 - 1) == 1


def test_embedding_params_validation():
    with pytest.raises(ParameterError):
        EmbeddingParams(1, 2, 0, 0, 1, 1)  # n < r
    with pytest.raises(ParameterError):
        EmbeddingParams(1, 1, -1, 0, 1, 1)
    with pytest.raises(ParameterError):
        EmbeddingParams(1, 1, 2, 2, 1, 2)  # ell*delta below d/r + g - 1
    with pytest.raises(ParameterError):
        EmbeddingParams(1, 1, 0, 0, 0, 1)


def test_grassmann_params_examples():
    gr = grassmann_params(EmbeddingParams(1, 1, 2, 2, 1, 5))
    assert (gr.total_dim, gr.subspace_dim, gr.gr_dim, gr.plucker_ambient_dim) \
        == (4, 2, 4, 5)
    gr = grassmann_params(EmbeddingParams(1, 1, 0, 0, 1, 1))
    assert (gr.total_dim, gr.subspace_dim, gr.gr_dim, gr.plucker_ambient_dim) \
        == (2, 2, 0, 0)
    gr = grassmann_params(EmbeddingParams(2, 2, 3, 0, 1, 2))
    assert (gr.total_dim, gr.subspace_dim, gr.gr_dim) == (6, 3, 9)


def test_grassmann_params_requires_exact_section_count():
    with pytest.raises(ParameterError):
        grassmann_params(EmbeddingParams(1, 1, 0, 2, 1, 2))  # elldelta = 2g-2


def test_grassmann_degrades_gracefully():
    # zero-dimensional subspace: point Grassmannian, point Plucker target
    gr = grassmann_params(EmbeddingParams(1, 1, 3, 0, 1, 2))
    assert gr.subspace_dim == 0
    assert gr.gr_dim == 0 and gr.plucker_ambient_dim == 0


def test_moduli_dim():
    assert moduli_dim(2, 2, 3, 0) == 6
    assert moduli_dim(2, 2, 3, 3) == 6
    assert moduli_dim(1, 1, 7, 2) == 7
    assert moduli_dim(3, 2, 5, 2) == 13
    with pytest.raises(ParameterError):
        moduli_dim(3, 2, 2, 2)  # n > r and d <= r(g-1)
    with pytest.raises(ParameterError):
        moduli_dim(1, 2, 5, 0)


def test_tangent_dim_local():
    assert tangent_dim_local(1, 4) == 4
    assert tangent_dim_local(2, 3) == 6
    assert tangent_dim_local(3, 0) == 0
    for n in range(1, 5):
        for d in range(0, 9):
            for g in range(0, 4):
                assert tangent_dim_local(n, d) == moduli_dim(n, n, d, g)


def test_stability_examples():
    phys = PhysicalParams(1.0, 1.0, 4 * pi * 3)
    rep = stability_check(phys, 2)
    assert rep.stable
    assert rep.critical_tau == pytest.approx(2.0 / 3.0)
    # exactly critical tau is not stable
    crit = PhysicalParams(1.0, rep.critical_tau, 4 * pi * 3)
    assert not stability_check(crit, 2).stable
    # d = 0 with positive tau is always stable
    assert stability_check(PhysicalParams(1.0, 0.5, 1.0), 0).stable


def test_stability_monotonicity():
    vol = 10.0
    margins = [stability_check(PhysicalParams(1.0, tau, vol), 1).margin
               for tau in (0.5, 1.0, 2.0, 4.0)]
    assert margins == sorted(margins)
    by_d = [stability_check(PhysicalParams(1.0, 5.0, vol), d).margin
            for d in range(0, 4)]
    assert by_d == sorted(by_d, reverse=True)


def test_physical_params_validation():
    with pytest.raises(ParameterError):
        PhysicalParams(0.0, 1.0, 1.0)
    with pytest.raises(ParameterError):
        PhysicalParams(1.0, 1.0, -2.0)
