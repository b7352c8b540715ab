"""Newton solver for the abelian vortex equations on a flat torus, in the
gauge-invariant scalar reduction.

The first vortex equation says the Higgs field is holomorphic for the
connection, which determines the gauge potential from the phase and
log-modulus of phi up to gauge; taking the curvature of that potential
removes the gauge freedom, and the second equation (curvature balanced
against the moment map -(i/2)(|phi|^2 - tau)) then closes on the single
gauge-invariant unknown u = log(|phi|^2 / tau).  Each zero of phi of
multiplicity m contributes a point source of weight 4*pi*m, leaving the
standard semilinear equation

    Lap(u) = e^2 * tau * (e^u - 1) + 4*pi * sum_i m_i * delta_{z_i},

whose solutions exist exactly when the stability margin
tau*e^2*Vol - 4*pi*d is positive.  The sign of the curvature is the one
orientation choice; it is pinned by flux positivity below and changes no
reported scalar.  Integrating the equation gives the two identities the
solver is tested against,

    int |phi|^2 = tau*Vol - 4*pi*d/e^2,        (Bradlow identity)
    flux := (e^2/4pi) int (tau - |phi|^2) = d,  (flux quantization)

with the orientation fixed so that a degree-d bundle carries positive flux.

Discretization: second-order five-point Laplacian on a uniform periodic
grid.  Each delta source is replaced by a periodic Gaussian bump whose
*discrete* integral is normalized to exactly 4*pi*m_i, so both identities
hold at the discrete level up to the Newton residual.  Linearized steps are
solved by conjugate gradients on the positive-definite operator
-Lap + e^2*tau*e^u, preconditioned by the constant-coefficient inverse
applied in Fourier space.  Damping is residual backtracking with factor 1/2
down to steps of 2^-10.

A solve owns its grids; independent problems can run concurrently.  All
reductions are plain numpy sums over fixed-shape arrays, so repeated runs
on identical inputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Optional, Sequence

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from .moduli_numerics import ParameterError

__all__ = [
    "TorusSpec",
    "VortexProblem",
    "TorusVortexState",
    "StabilityError",
    "NonConvergenceError",
    "solve",
    "bradlow_sweep",
    "SweepRow",
    "parse_config",
    "write_field",
]

MIN_NEWTON_STEP = 2.0 ** -10


class StabilityError(ValueError):
    """The requested parameters sit at or below the dissolving threshold."""

    def __init__(self, message: str, critical_tau: float):
        super().__init__(message)
        self.critical_tau = critical_tau


class NonConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class TorusSpec:
    """Flat torus of periods (L1, L2) with an N1 x N2 sample grid."""

    L1: float
    L2: float
    N1: int
    N2: int

    def __post_init__(self):
        if self.L1 <= 0 or self.L2 <= 0:
            raise ParameterError("periods must be positive")
        if self.N1 < 32 or self.N2 < 32:
            raise ParameterError("grid sizes must be >= 32")

    @property
    def vol(self) -> float:
        return self.L1 * self.L2

    @property
    def spacing(self) -> tuple:
        return self.L1 / self.N1, self.L2 / self.N2


@dataclass(frozen=True)
class VortexProblem:
    """Zeros are (x, y, multiplicity) triples; reg_width defaults to three
    grid spacings when not given."""

    torus: TorusSpec
    zeros: tuple
    e2: float
    tau: float
    reg_width: Optional[float] = None
    tol: float = 1e-10
    max_iter: int = 50

    def __post_init__(self):
        zs = tuple((float(x), float(y), int(m)) for (x, y, m) in self.zeros)
        object.__setattr__(self, "zeros", zs)
        if self.e2 <= 0 or self.tau <= 0:
            raise ParameterError("e2 and tau must be positive")
        if any(m < 1 for (_, _, m) in zs):
            raise ParameterError("multiplicities must be positive integers")
        if self.tol <= 0 or self.max_iter < 1:
            raise ParameterError("tol must be positive and max_iter >= 1")
        h1, h2 = self.torus.spacing
        width = self.resolved_reg_width()
        if width < 2.0 * max(h1, h2) * (1.0 - 1e-12):
            raise ParameterError("reg_width must be at least two grid spacings")

    @property
    def d(self) -> int:
        return sum(m for (_, _, m) in self.zeros)

    def resolved_reg_width(self) -> float:
        if self.reg_width is not None:
            return float(self.reg_width)
        h1, h2 = self.torus.spacing
        return 3.0 * max(h1, h2)

    def margin(self) -> float:
        return self.tau * self.e2 * self.torus.vol - 4.0 * pi * self.d

    def critical_tau(self) -> float:
        return 4.0 * pi * self.d / (self.e2 * self.torus.vol)


@dataclass(frozen=True)
class TorusVortexState:
    """Converged scalar field with the derived gauge-invariant scalars."""

    u: np.ndarray
    residual_norm: float
    iterations: int
    flux: float
    higgs_l2: float
    sup_phi2: float
    max_u: float

    def __post_init__(self):
        self.u.setflags(write=False)


def _laplacian(u: np.ndarray, h1: float, h2: float) -> np.ndarray:
    return ((np.roll(u, 1, axis=0) + np.roll(u, -1, axis=0) - 2.0 * u) / (h1 * h1)
            + (np.roll(u, 1, axis=1) + np.roll(u, -1, axis=1) - 2.0 * u) / (h2 * h2))


def _fourier_symbol(torus: TorusSpec) -> np.ndarray:
    """Eigenvalues of -Lap on the grid, laid out for rfft2."""
    h1, h2 = torus.spacing
    k1 = np.arange(torus.N1)
    k2 = np.arange(torus.N2 // 2 + 1)
    lam1 = (2.0 - 2.0 * np.cos(2.0 * np.pi * k1 / torus.N1)) / (h1 * h1)
    lam2 = (2.0 - 2.0 * np.cos(2.0 * np.pi * k2 / torus.N2)) / (h2 * h2)
    return lam1[:, None] + lam2[None, :]


def _source_grid(prob: VortexProblem) -> np.ndarray:
    """Sum of Gaussian bumps, each normalized to discrete integral 4*pi*m."""
    torus = prob.torus
    h1, h2 = torus.spacing
    x = np.arange(torus.N1) * h1
    y = np.arange(torus.N2) * h2
    width = prob.resolved_reg_width()
    cell = h1 * h2
    total = np.zeros((torus.N1, torus.N2))
    for (zx, zy, m) in prob.zeros:
        dx = np.mod(x - zx + 0.5 * torus.L1, torus.L1) - 0.5 * torus.L1
        dy = np.mod(y - zy + 0.5 * torus.L2, torus.L2) - 0.5 * torus.L2
        r2 = dx[:, None] ** 2 + dy[None, :] ** 2
        bump = np.exp(-r2 / (2.0 * width * width))
        mass = bump.sum() * cell
        total += (4.0 * pi * m / mass) * bump
    return total


def solve(prob: VortexProblem) -> TorusVortexState:
    """Damped Newton iteration on the discretized scalar vortex equation."""
    margin = prob.margin()
    if margin <= 0.0:
        raise StabilityError(
            "stability violated: tau*e2*Vol - 4*pi*d = %.6g <= 0 "
            "(critical tau = %.12g)" % (margin, prob.critical_tau()),
            prob.critical_tau())
    torus = prob.torus
    h1, h2 = torus.spacing
    cell = h1 * h2
    e2tau = prob.e2 * prob.tau
    source = _source_grid(prob)
    symbol = _fourier_symbol(torus)
    shape = (torus.N1, torus.N2)
    size = torus.N1 * torus.N2

    def fft_solve(rhs: np.ndarray, shift: float) -> np.ndarray:
        return np.fft.irfft2(np.fft.rfft2(rhs) / (symbol + shift), s=shape)

    def residual(u: np.ndarray) -> np.ndarray:
        return _laplacian(u, h1, h2) - e2tau * (np.exp(u) - 1.0) - source

    # initial guess: constant-coefficient linearization  (Lap - e2*tau) u = S
    u = -fft_solve(source, e2tau)
    res = residual(u)
    rnorm = float(np.max(np.abs(res)))
    rnorm0 = max(rnorm, 1.0)
    iterations = 0

    while rnorm > prob.tol:
        if iterations >= prob.max_iter:
            raise NonConvergenceError(
                "no convergence within %d Newton iterations (residual %.3g)"
                % (prob.max_iter, rnorm), rnorm, iterations)
        weight = e2tau * np.exp(u)

        def matvec(v):
            vv = v.reshape(shape)
            return (-_laplacian(vv, h1, h2) + weight * vv).ravel()

        shift = float(weight.mean())

        def precond(v):
            return fft_solve(v.reshape(shape), shift).ravel()

        op = LinearOperator((size, size), matvec=matvec, dtype=float)
        pre = LinearOperator((size, size), matvec=precond, dtype=float)
        rtol = max(1e-12, min(1e-3, 0.1 * rnorm / rnorm0))
        step, _ = cg(op, res.ravel(), rtol=rtol, atol=0.0, M=pre, maxiter=2000)
        step = step.reshape(shape)

        alpha = 1.0
        while True:
            trial = u + alpha * step
            trial_res = residual(trial)
            trial_norm = float(np.max(np.abs(trial_res)))
            if trial_norm < rnorm:
                u, res, rnorm = trial, trial_res, trial_norm
                break
            alpha *= 0.5
            if alpha < MIN_NEWTON_STEP:
                raise NonConvergenceError(
                    "line search stalled at residual %.3g" % rnorm,
                    rnorm, iterations)
        iterations += 1

    phi2 = prob.tau * np.exp(u)
    higgs_l2 = float(phi2.sum() * cell)
    flux = float(prob.e2 / (4.0 * pi) * ((prob.tau - phi2).sum() * cell))
    return TorusVortexState(
        u=u,
        residual_norm=rnorm,
        iterations=iterations,
        flux=flux,
        higgs_l2=higgs_l2,
        sup_phi2=float(phi2.max()),
        max_u=float(u.max()),
    )


@dataclass(frozen=True)
class SweepRow:
    vol: float
    margin: float
    sup_phi2: float
    higgs_l2: float


def bradlow_sweep(template: VortexProblem, vol_list: Sequence[float]) -> list:
    """Re-solve the template across areas, keeping shape and zero positions
    fixed in fractional coordinates.  Refuses up front if any requested area
    sits at or below the dissolving threshold."""
    base = template.torus
    rows = []
    problems = []
    for vol in vol_list:
        scale = sqrt(vol / base.vol)
        torus = TorusSpec(base.L1 * scale, base.L2 * scale, base.N1, base.N2)
        zeros = tuple((x * scale, y * scale, m) for (x, y, m) in template.zeros)
        reg = None if template.reg_width is None else template.reg_width * scale
        prob = VortexProblem(torus, zeros, template.e2, template.tau,
                             reg_width=reg, tol=template.tol,
                             max_iter=template.max_iter)
        if prob.margin() <= 0.0:
            raise StabilityError(
                "volume %.6g is at or below the dissolving threshold" % vol,
                prob.critical_tau())
        problems.append(prob)
    for prob in problems:
        state = solve(prob)
        rows.append(SweepRow(prob.torus.vol, prob.margin(),
                             state.sup_phi2, state.higgs_l2))
    return rows


# ---------------------------------------------------------------------------
# problem files and field dumps


def parse_config(text: str) -> VortexProblem:
    """Key-value problem description.

    Recognized keys: L1, L2, N1, N2, e2, tau, tol, reg_width, max_iter, and
    repeatable ``zero = x y [multiplicity]`` lines.  '#' starts a comment.
    """
    values = {}
    zeros = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError("line %d: expected key = value" % lineno)
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key == "zero":
            parts = val.split()
            if len(parts) == 2:
                parts.append("1")
            if len(parts) != 3:
                raise ParameterError("line %d: zero takes x y [m]" % lineno)
            zeros.append((float(parts[0]), float(parts[1]), int(parts[2])))
        else:
            values[key] = val
    missing = {"L1", "L2", "N1", "N2", "e2", "tau"} - set(values)
    if missing:
        raise ParameterError("missing keys: %s" % ", ".join(sorted(missing)))
    torus = TorusSpec(float(values["L1"]), float(values["L2"]),
                      int(values["N1"]), int(values["N2"]))
    return VortexProblem(
        torus=torus,
        zeros=tuple(zeros),
        e2=float(values["e2"]),
        tau=float(values["tau"]),
        reg_width=float(values["reg_width"]) if "reg_width" in values else None,
        tol=float(values.get("tol", "1e-10")),
        max_iter=int(values.get("max_iter", "50")),
    )


def write_field(path, state: TorusVortexState, prob: VortexProblem) -> None:
    """Dump u as row-major little-endian float64 after one text header line
    holding N1, N2, the two periods, and d."""
    torus = prob.torus
    header = "%d %d %r %r %d\n" % (torus.N1, torus.N2, torus.L1, torus.L2, prob.d)
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(np.ascontiguousarray(state.u, dtype="<f8").tobytes())
