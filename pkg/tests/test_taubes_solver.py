from math import pi, sqrt

import numpy as np
import pytest

from vortexmoduli.moduli_numerics import ParameterError
from vortexmoduli.taubes_solver import (
    NonConvergenceError,
    StabilityError,
    TorusSpec,
    VortexProblem,
    bradlow_sweep,
    parse_config,
    solve,
    write_field,
)


def square_problem(d, vol_factor, grid=64, zeros=None, **kw):
    vol = 4 * pi * vol_factor
    side = sqrt(vol)
    torus = TorusSpec(side, side, grid, grid)
    if zeros is None:
        zeros = ((side / 2, side / 2, d),) if d else ()
    return VortexProblem(torus, zeros, e2=kw.pop("e2", 1.0),
                         tau=kw.pop("tau", 1.0), **kw)


def test_vacuum():
    state = solve(square_problem(0, 2.0))
    assert state.iterations == 0
    assert state.flux == 0.0
    assert np.all(state.u == 0.0)
    assert state.higgs_l2 == pytest.approx(8 * pi)


def test_single_vortex_identities():
    prob = square_problem(1, 2.0)
    state = solve(prob)
    vol = prob.torus.vol
    assert state.residual_norm <= prob.tol
    assert abs(state.higgs_l2 - (vol - 4 * pi)) / vol <= 1e-9
    assert abs(state.flux - 1.0) <= 1e-9
    assert state.sup_phi2 < 1.0
    assert state.max_u < 0.0


def test_double_zero_matches_two_simple_zeros():
    side = sqrt(12 * pi)
    torus = TorusSpec(side, side, 64, 64)
    double = VortexProblem(torus, ((side / 2, side / 2, 2),), e2=1.0, tau=1.0)
    two = VortexProblem(torus, ((side / 4, side / 4, 1), (3 * side / 4, 3 * side / 4, 1)),
                        e2=1.0, tau=1.0)
    s1, s2 = solve(double), solve(two)
    assert s1.flux == pytest.approx(2.0, abs=1e-9)
    assert s2.flux == pytest.approx(2.0, abs=1e-9)
    assert s1.higgs_l2 == pytest.approx(s2.higgs_l2, abs=1e-8)


def test_translation_invariance():
    # lattice-commensurate shifts leave every reported scalar unchanged
    prob = square_problem(1, 1.8)
    h1, h2 = prob.torus.spacing
    (zx, zy, m), = prob.zeros
    shifted = VortexProblem(prob.torus, ((zx + 7 * h1, zy - 5 * h2, m),),
                            e2=1.0, tau=1.0)
    a, b = solve(prob), solve(shifted)
    assert abs(a.flux - b.flux) <= 1e-10
    assert abs(a.higgs_l2 - b.higgs_l2) / a.higgs_l2 <= 1e-10
    assert abs(a.sup_phi2 - b.sup_phi2) <= 1e-10


def test_stability_refusal():
    with pytest.raises(StabilityError) as err:
        solve(square_problem(1, 0.9))
    assert err.value.critical_tau > 1.0
    with pytest.raises(StabilityError):
        solve(square_problem(1, 1.0))  # exactly critical


def test_max_iter_enforced():
    with pytest.raises(NonConvergenceError):
        solve(square_problem(1, 2.0, max_iter=1, tol=1e-14))


def test_grid_convergence_of_fields():
    # with the bump width tied to the spacing, field-level quantities
    # converge first order: successive sup|phi|^2 differences shrink >= 2x
    sups = []
    for grid in (32, 64, 128, 256):
        state = solve(square_problem(1, 2.0, grid=grid))
        sups.append(state.sup_phi2)
    d1 = abs(sups[1] - sups[0])
    d2 = abs(sups[2] - sups[1])
    d3 = abs(sups[3] - sups[2])
    assert d2 <= d1 / 2.0
    assert d3 <= d2 / 2.0


def test_max_principle_monitor():
    # max(u) stays below zero and decreases in magnitude of violation as the
    # regularization narrows (finer grid, default width = 3 spacings)
    coarse = solve(square_problem(1, 2.0, grid=32))
    fine = solve(square_problem(1, 2.0, grid=128))
    assert coarse.max_u < 1e-6
    assert fine.max_u < 1e-6


def test_bradlow_sweep():
    template = square_problem(1, 1.5, grid=64)
    vols = [4 * pi * f for f in (1.2, 1.6, 2.4)]
    rows = bradlow_sweep(template, vols)
    assert [r.vol for r in rows] == pytest.approx(vols)
    for row in rows:
        assert abs(row.higgs_l2 - (row.vol - 4 * pi)) / row.vol <= 1e-9
        assert row.margin == pytest.approx(row.vol - 4 * pi)
    sups = [r.sup_phi2 for r in rows]
    assert sups[0] < sups[1] < sups[2]
    # doubling the margin doubles higgs_l2 exactly (e2 = tau = 1)
    rows2 = bradlow_sweep(template, [4 * pi * 1.5, 4 * pi * 2.0])
    m = [r.higgs_l2 for r in rows2]
    assert m[1] == pytest.approx(2 * m[0], rel=1e-9)
    with pytest.raises(StabilityError):
        bradlow_sweep(template, [4 * pi * 0.99])


def test_problem_validation():
    torus = TorusSpec(6.0, 6.0, 64, 64)
    with pytest.raises(ParameterError):
        TorusSpec(0.0, 6.0, 64, 64)
    with pytest.raises(ParameterError):
        TorusSpec(6.0, 6.0, 16, 64)
    with pytest.raises(ParameterError):
        VortexProblem(torus, ((1.0, 1.0, 0),), e2=1.0, tau=1.0)
    with pytest.raises(ParameterError):
        VortexProblem(torus, (), e2=-1.0, tau=1.0)
    with pytest.raises(ParameterError):
        VortexProblem(torus, (), e2=1.0, tau=1.0, reg_width=0.05)


def test_parse_config_and_defaults():
    text = """
    # a one-vortex problem
    L1 = 5.013256549262001
    L2 = 5.013256549262001
    N1 = 64
    N2 = 64
    e2 = 1.0
    tau = 1.0
    zero = 2.5 2.5 1
    zero = 1.0 1.0
    """
    prob = parse_config(text)
    assert prob.d == 2
    assert prob.zeros[1] == (1.0, 1.0, 1)
    assert prob.tol == 1e-10 and prob.max_iter == 50
    with pytest.raises(ParameterError):
        parse_config("L1 = 5\n")
    with pytest.raises(ParameterError):
        parse_config("nonsense line\n")


def test_write_field_format(tmp_path):
    prob = square_problem(1, 2.0, grid=32)
    state = solve(prob)
    path = tmp_path / "field.dat"
    write_field(path, state, prob)
    with open(path, "rb") as fh:
        header = fh.readline().split()
        payload = fh.read()
    assert [int(header[0]), int(header[1])] == [32, 32]
    assert float(header[2]) == prob.torus.L1
    assert int(header[4]) == 1
    grid = np.frombuffer(payload, dtype="<f8").reshape(32, 32)
    np.testing.assert_allclose(grid, state.u)
