"""Command-line surface: seeded, reproducible verification jobs with
JSON reports.

Exit codes: 0 all residuals within tolerance, 1 verification failure,
2 configuration/usage error. Identical config and seed produce
byte-identical reports up to the ``timestamp`` field.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

import numpy as np

from . import __version__
from .cwf import write_field, write_scalar_csv
from .errors import ConfigError, ModelError
from .geometry import Metric3, TorusGrid, build_pauli
from .minilang import parse_scalar_expr
from .spinor import FACTORIZATION_SIGN, lagrangian_stationary, lagrangian_weyl
from .suites import VERIFIERS
from .weyl import el_residual, planewave_solution, theorem_witness_suite, weyl_residual_norm

TWO_PI = 2.0 * np.pi


def _parse_triple(text, cast, name):
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"{name} expects three comma-separated values, got {text!r}")
    try:
        return tuple(cast(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"cannot parse {name} {text!r}: {exc}") from None


def _parse_metric(text: str) -> Metric3:
    if text == "identity":
        return Metric3.identity()
    if text.startswith("diag:"):
        a, b, c = _parse_triple(text[len("diag:"):], float, "--metric diag")
        return Metric3.diagonal(a, b, c)
    if text.startswith("full:"):
        parts = text[len("full:"):].split(",")
        if len(parts) != 6:
            raise ConfigError("--metric full expects 6 entries "
                              "g11,g12,g13,g22,g23,g33")
        try:
            g11, g12, g13, g22, g23, g33 = (float(p) for p in parts)
        except ValueError as exc:
            raise ConfigError(f"cannot parse metric {text!r}: {exc}") from None
        return Metric3.from_matrix([[g11, g12, g13],
                                    [g12, g22, g23],
                                    [g13, g23, g33]])
    raise ConfigError(f"unknown metric spec {text!r} "
                      "(use identity | diag:a,b,c | full:6 entries)")


def _build_grid(args) -> TorusGrid:
    dims = _parse_triple(args.grid, int, "--grid")
    box = _parse_triple(args.box, float, "--box")
    try:
        return TorusGrid(dims=dims, box=box)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _canonical_config(args, grid, metric) -> dict:
    cfg = {
        "command": args.command,
        "grid": list(grid.dims),
        "box": list(grid.box),
        "metric": metric.g_lower.tolist(),
        "seed": args.seed,
        "threads": args.threads,
        "version": __version__,
    }
    for key in ("what", "cases", "tol", "p0", "k", "branch", "n", "perturb", "h"):
        if hasattr(args, key) and getattr(args, key) is not None:
            cfg[key] = getattr(args, key)
    return dict(sorted(cfg.items()))


def _emit(report: dict, out_path) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _finish(report: dict, args) -> int:
    report["timestamp"] = datetime.datetime.now(
        datetime.timezone.utc).isoformat()
    _emit(report, args.out)
    return 0 if report.get("verdict") == "pass" else 1


def _cmd_verify(args) -> int:
    grid = _build_grid(args)
    metric = _parse_metric(args.metric)
    if args.tol is not None and args.tol <= 0.0:
        raise ConfigError("--tol must be positive")
    kwargs = {}
    if args.what == "conformal":
        if args.h is not None:
            kwargs["scale_field"] = parse_scalar_expr(args.h, grid)
        if args.tol is not None:
            kwargs["tol"] = args.tol
        result = VERIFIERS["conformal"](grid, **kwargs)
    else:
        if args.cases is not None:
            kwargs["n_cases"] = args.cases
        if args.tol is not None:
            if args.what == "correspondence":
                kwargs["roundtrip_tol"] = args.tol
            else:
                kwargs["tol"] = args.tol
        if args.what == "scaling" and args.h is not None:
            kwargs["h_field"] = parse_scalar_expr(args.h, grid)
        result = VERIFIERS[args.what](grid, args.seed, **kwargs)
    report = {
        "config": _canonical_config(args, grid, metric),
        "factorization_sign": FACTORIZATION_SIGN,
        "result": result,
        "verdict": "pass" if result["pass"] else "fail",
    }
    return _finish(report, args)


def _cmd_planewave(args) -> int:
    grid = _build_grid(args)
    metric = _parse_metric(args.metric)
    k = _parse_triple(args.k, int, "--k")
    branch = {"+": 1, "-": -1}[args.branch]
    spec, eta = planewave_solution(k, branch, metric, grid)
    pauli = build_pauli(metric)
    if args.eta_out:
        write_field(args.eta_out, "spinor", eta, grid)
    lag = lagrangian_stationary(eta, spec.p0, pauli, metric, grid)
    lpm = lagrangian_weyl(eta, spec.p0, spec.weyl_sign, pauli, metric, grid)
    if args.density_csv:
        write_scalar_csv(args.density_csv, lag, grid)
    wres = weyl_residual_norm(eta, spec.p0, spec.weyl_sign, pauli, grid)
    eres = el_residual(eta, spec.p0, pauli, metric, grid, mode="analytic")
    report = {
        "config": _canonical_config(args, grid, metric),
        "factorization_sign": FACTORIZATION_SIGN,
        "p0": spec.p0,
        "weyl_sign": spec.weyl_sign,
        "dispersion_residual": spec.dispersion_residual,
        "weyl_residual": wres,
        "el_residual": eres,
        "L_max": float(np.abs(lag).max()),
        "Lpm_max": float(np.abs(lpm).max()),
        "verdict": "pass" if (spec.dispersion_residual <= 1e-12
                              and wres <= 1e-12 and eres <= 1e-8
                              and float(np.abs(lag).max()) <= 1e-12) else "fail",
    }
    return _finish(report, args)


def _cmd_theorem(args) -> int:
    grid = _build_grid(args)
    metric = _parse_metric(args.metric)
    report = theorem_witness_suite(args.seed, grid, metric, n_cases=args.n,
                                   perturb=args.perturb)
    report["config"].update(_canonical_config(args, grid, metric))
    report["factorization_sign"] = FACTORIZATION_SIGN
    return _finish(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosserat-weyl",
        description="Verification toolkit for the rotational-elasticity "
                    "model of the massless neutrino on a flat 3-torus.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--grid", default="16,16,16",
                       help="grid dims N1,N2,N3 (even, >= 4)")
        p.add_argument("--box", default=f"{TWO_PI},{TWO_PI},{TWO_PI}",
                       help="coordinate periods L1,L2,L3")
        p.add_argument("--metric", default="identity",
                       help="identity | diag:a,b,c | full:g11,g12,g13,g22,g23,g33")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (delegated to numpy)")
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    p_verify = sub.add_parser("verify", help="run a named invariant suite")
    p_verify.add_argument("what", choices=sorted(VERIFIERS))
    p_verify.add_argument("--cases", type=int, help="number of seeded cases")
    p_verify.add_argument("--tol", type=float, help="override the tolerance")
    p_verify.add_argument("--h", help="scalar expression, e.g. '0.3*cos(x2)' "
                                      "(for scaling: h; for conformal: e^h)")
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_pw = sub.add_parser("planewave", help="generate an exact plane-wave "
                                            "Weyl solution and check it")
    p_pw.add_argument("--k", required=True, help="integer modes k1,k2,k3 (nonzero)")
    p_pw.add_argument("--branch", choices=["+", "-"], default="+")
    p_pw.add_argument("--eta-out", help="write the spinor field as CWF v1")
    p_pw.add_argument("--density-csv", help="dump the Lagrangian density as CSV")
    add_common(p_pw)
    p_pw.set_defaults(func=_cmd_planewave)

    p_thm = sub.add_parser("theorem", help="run the solution/stationary-point "
                                           "witness suite")
    p_thm.add_argument("--n", type=int, default=16, help="cases per sign")
    p_thm.add_argument("--perturb", type=float, default=0.1,
                       help="amplitude of the non-solution perturbations")
    add_common(p_thm)
    p_thm.set_defaults(func=_cmd_theorem)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
