"""Command-line entry point.

One subcommand per module, JSON on stdout, diagnostics on stderr.  Exit
codes: 0 success, 2 validation error, 3 numerical non-convergence.  Exact
rationals are serialized as strings "p/q" so nothing is lost on the wire;
identical inputs to the exact-arithmetic subcommands produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import acceptance, genus0, kahler_class, moduli_numerics, strata, symring
from . import taubes_solver
from . import tensor_oracle as oracle
from .moduli_numerics import ParameterError

CONFIG_DIR_ENV = "VORTEXMODULI_CONFIG_DIR"


def _jsonable(value):
    if isinstance(value, Fraction):
        return symring.format_fraction(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(payload: dict, as_text: bool) -> None:
    if as_text:
        for key, value in payload.items():
            print("%s: %s" % (key, json.dumps(_jsonable(value), sort_keys=True)))
    else:
        print(json.dumps(_jsonable(payload), sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands


def cmd_ring(args) -> dict:
    params = symring.RingParams(args.d, args.g)
    cls = symring.parse_class(args.expression, params)
    if args.oracle:
        integral = oracle.oracle_integrate(oracle.pullback(cls))
    else:
        integral = symring.integrate(cls)
    return {
        "normal_form": symring.format_class(cls),
        "integral": symring.format_fraction(integral),
    }


def cmd_kahler(args) -> dict:
    degs = kahler_class.curve_degrees(args.d, args.g, args.elldelta)
    cls = kahler_class.fs_coefficients(args.d, args.g, degs)
    out = {
        "C_eta": cls.c_eta,
        "C_sigma": cls.c_sigma,
        "d0": degs.d0,
        "d1": degs.d1,
        "volume": kahler_class.symplectic_volume(cls, args.d, args.g),
    }
    if args.e2 is not None or args.tau is not None or args.vol is not None:
        if None in (args.e2, args.tau, args.vol):
            raise ParameterError("--e2, --tau and --vol must be given together")
        phys = moduli_numerics.PhysicalParams(args.e2, args.tau, args.vol)
        rep = kahler_class.representability(phys, args.d, args.g)
        out.update({
            "q": rep.q,
            "elldelta_theorem": rep.elldelta_theorem,
            "elldelta_ratio": rep.elldelta_ratio,
            "consistent": rep.consistent,
        })
    return out


def cmd_embed(args) -> dict:
    p = moduli_numerics.EmbeddingParams(args.n, args.r, args.d, args.g,
                                        args.ell, args.delta)
    gr = moduli_numerics.grassmann_params(p)
    out = {
        "rr_dim": moduli_numerics.rr_dim(p),
        "total_dim": gr.total_dim,
        "subspace_dim": gr.subspace_dim,
        "gr_dim": gr.gr_dim,
        "plucker_ambient_dim": gr.plucker_ambient_dim,
    }
    try:
        out["moduli_dim"] = moduli_numerics.moduli_dim(args.n, args.r, args.d, args.g)
    except ParameterError:
        out["moduli_dim"] = None
    return out


def cmd_stability(args) -> dict:
    phys = moduli_numerics.PhysicalParams(args.e2, args.tau, args.vol)
    rep = moduli_numerics.stability_check(phys, args.d, args.r)
    return {"stable": rep.stable, "margin": rep.margin,
            "critical_tau": rep.critical_tau}


def cmd_strata(args):
    rows = strata.stratification_report(args.d, args.r)
    if args.text:
        widths = ("partition", "num_parts", "dim", "codim")
        print("%-20s %9s %5s %6s  tower" % widths)
        for row in rows:
            print("%-20s %9d %5d %6d  %s" % (
                str(row["partition"]), row["num_parts"], row["dim"],
                row["codim"], row["tower"]))
        return None
    return {"d": args.d, "r": args.r, "strata": rows}


def cmd_genus0(args) -> dict:
    if args.family:
        if args.d is None:
            raise ParameterError("--family needs --d")
        delta = args.delta if args.delta is not None else args.d + 2
        coords = genus0.plucker_sweep(args.family, args.d, delta)
        degree = max(m.degree for m in coords if m)
        return {
            "family": args.family,
            "d": args.d,
            "delta": delta,
            "curve_degree": degree,
            "coordinate_t_degrees": [m.degree if m else None for m in coords],
        }
    if not args.s:
        raise ParameterError("give either --s or --family")
    coeffs = [Fraction(tok) for tok in args.s.replace(" ", "").split(",")]
    form = genus0.BinaryForm(len(coeffs) - 1, tuple(coeffs))
    if not form:
        raise ParameterError("the zero form does not define a pair")
    pair = genus0.BinaryFormPair.from_section([form])
    delta = args.delta if args.delta is not None else pair.d + 2
    basis = genus0.embed_pair(pair, delta)
    coords = genus0.plucker(basis)
    rec = genus0.reconstruct(basis, 1, delta)
    return {
        "d": pair.d,
        "delta": delta,
        "subspace_dim": len(basis.basis),
        "basis": [[symring.format_fraction(c) for c in row] for row in basis.basis],
        "plucker": [symring.format_fraction(c) for c in coords],
        "reconstructed": str(rec.fs_matrix[0][0]),
        "smallest_delta": genus0.smallest_working_delta(pair),
    }


def cmd_vortex(args) -> dict:
    path = args.config
    if not os.path.exists(path) and not os.path.isabs(path):
        base = os.environ.get(CONFIG_DIR_ENV)
        if base and os.path.exists(os.path.join(base, path)):
            path = os.path.join(base, path)
    with open(path, "r", encoding="utf-8") as fh:
        prob = taubes_solver.parse_config(fh.read())
    state = taubes_solver.solve(prob)
    if args.dump_u:
        taubes_solver.write_field(args.dump_u, state, prob)
    return {
        "residual": state.residual_norm,
        "iterations": state.iterations,
        "flux": state.flux,
        "higgs_l2": state.higgs_l2,
        "sup_phi2": state.sup_phi2,
    }


def cmd_verify(args) -> dict:
    results = acceptance.run_all(fast=args.fast)
    for res in results:
        print(res.line(), file=sys.stderr)
    payload = {
        "passed": all(r.passed for r in results),
        "criteria": [{"index": r.index, "name": r.name, "passed": r.passed,
                      "detail": r.detail} for r in results],
    }
    return payload


# ---------------------------------------------------------------------------


def _add_format_flags(parser, default=argparse.SUPPRESS):
    # registered on the main parser (default False) and on every subparser
    # (default SUPPRESS) so the toggle works on either side of the subcommand
    parser.add_argument("--text", dest="text", action="store_true",
                        default=default, help="plain text output instead of JSON")
    parser.add_argument("--json", dest="text", action="store_false",
                        default=argparse.SUPPRESS, help="JSON output (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexmoduli",
        description="vortex moduli spaces: exact cohomology, embeddings, "
                    "strata, and the vortex equation on a torus")
    _add_format_flags(parser, default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="normal form and integral of a ring expression")
    p.add_argument("expression", help="e.g. '2*eta^2 + 1/3*eta*xi[1,3]'")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="integrate through the tensor-power oracle")
    _add_format_flags(p)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("kahler", help="curve degrees, Fubini-Study coefficients, volumes")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--elldelta", type=int, required=True)
    p.add_argument("--e2", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--vol", type=float)
    _add_format_flags(p)
    p.set_defaults(func=cmd_kahler)

    p = sub.add_parser("embed", help="Grassmannian embedding dimensions")
    for flag in ("--n", "--r", "--d", "--g", "--ell", "--delta"):
        p.add_argument(flag, type=int, required=True)
    _add_format_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("stability", help="stability margin and critical tau")
    p.add_argument("--e2", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--vol", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    _add_format_flags(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("strata", help="partition strata of the local moduli space")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _add_format_flags(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("genus0", help="embedding and sweeps on the projective line")
    p.add_argument("--s", help="comma-separated form coefficients, leading x power first")
    p.add_argument("--family", choices=("d0", "d1"))
    p.add_argument("--d", type=int)
    p.add_argument("--delta", type=int)
    _add_format_flags(p)
    p.set_defaults(func=cmd_genus0)

    p = sub.add_parser("vortex", help="solve the vortex equation on a torus")
    p.add_argument("--config", required=True, help="key-value problem file")
    p.add_argument("--dump-u", help="write the scalar field grid to this path")
    _add_format_flags(p)
    p.set_defaults(func=cmd_vortex)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--fast", action="store_true",
                   help="exact-arithmetic checks only (skip the PDE runs)")
    _add_format_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except taubes_solver.NonConvergenceError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3
    except (ParameterError, taubes_solver.StabilityError, ValueError, OSError) as exc:
        detail = {"error": str(exc)}
        if isinstance(exc, taubes_solver.StabilityError):
            detail["critical_tau"] = exc.critical_tau
        print(json.dumps(detail), file=sys.stderr)
        return 2
    if payload is not None:
        _emit(payload, args.text)
    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
