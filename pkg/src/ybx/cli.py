"""Command-line front end: seeded, reproducible runs with file output.

Exit codes: 0 success, 1 check failure (residual over threshold, coverage
below threshold, no solver solution), 2 usage error, 3 I/O error.  All
printed floats carry 12 significant digits so output diffs are meaningful.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import entanglement, epower, generation, sampling, tensor, yang_baxter
from .errors import NoSolutionFound, YbxError

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_IO = 3

YBE_TOL = 1e-10
UNITARITY_TOL = 1e-12

DEFAULT_N = 1_000_000
DEFAULT_SEED = 42


def default_grid(d: int) -> int:
    return 200 if d == 3 else 50


def default_threshold(d: int) -> float:
    return 0.995 if d == 3 else 0.99


@dataclass(frozen=True)
class RunConfig:
    """Resolved knobs shared by the sampling commands."""

    command: str
    d: int
    n: int = DEFAULT_N
    seed: int = DEFAULT_SEED
    grid: int = 0
    threshold: float = 0.0
    workers: int | None = None
    output_path: str = "."

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        d = args.d
        return cls(
            command=args.command,
            d=d,
            n=args.n,
            seed=args.seed,
            grid=getattr(args, "grid", None) or default_grid(d),
            threshold=getattr(args, "threshold", None) or default_threshold(d),
            workers=getattr(args, "workers", None),
            output_path=getattr(args, "out", None) or ".",
        )


def fmt(value: float) -> str:
    return f"{float(value):.12g}"


def _render(value):
    """Round floats to 12 significant digits for JSON emission."""
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(fmt(value))
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def emit(record: dict, out: str | None) -> None:
    text = json.dumps(_render(record))
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def parse_angle(args, required: bool = True) -> float:
    if getattr(args, "theta_pi", None) is not None:
        return math.pi * float(Fraction(args.theta_pi))
    if getattr(args, "theta", None) is not None:
        return float(args.theta)
    if required:
        raise ValueError("an angle is required: pass --theta or --theta-pi")
    return 0.0


def parse_floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(piece) for piece in text.split(","))


def amplitudes_json(state: entanglement.TwoQuditState) -> list:
    return [[z.real, z.imag] for z in state.amplitudes]


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    d = args.d
    rng = np.random.default_rng(args.seed)
    pairs = rng.uniform(0.0, yang_baxter.TWO_PI, (args.n, 2))

    ybe_max, ybe_arg = -1.0, (0.0, 0.0)
    unit_max = inv_max = -1.0
    unit_arg = inv_arg = 0.0
    for t1, t2 in pairs:
        res = yang_baxter.ybe_residual(d, t1, t2)
        if res > ybe_max:
            ybe_max, ybe_arg = res, (t1, t2)
        for t in (t1, t2):
            r_unit, r_inverse = yang_baxter.unitarity_residuals(d, t)
            if r_unit > unit_max:
                unit_max, unit_arg = r_unit, t
            if r_inverse > inv_max:
                inv_max, inv_arg = r_inverse, t
    hecke = yang_baxter.hecke_quadratic_residual(d)
    braid = yang_baxter.braid_hecke_residual(d)

    print(f"ybe_residual_max      {fmt(ybe_max)}")
    print(f"unitarity_max         {fmt(unit_max)}")
    print(f"inverse_max           {fmt(inv_max)}")
    print(f"hecke_quadratic       {hecke}")
    print(f"braid_relation        {braid}")

    ok = True
    if ybe_max > YBE_TOL:
        ok = False
        print(f"FAIL ybe residual {fmt(ybe_max)} at d={d} theta1={fmt(ybe_arg[0])} theta2={fmt(ybe_arg[1])}")
    if unit_max > UNITARITY_TOL:
        ok = False
        print(f"FAIL unitarity residual {fmt(unit_max)} at d={d} theta={fmt(unit_arg)}")
    if inv_max > UNITARITY_TOL:
        ok = False
        print(f"FAIL inverse residual {fmt(inv_max)} at d={d} theta={fmt(inv_arg)}")
    if hecke != 0 or braid != 0:
        ok = False
        print(f"FAIL algebraic relation residual hecke={hecke} braid={braid} at d={d}")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_region(args) -> int:
    cfg = RunConfig.from_args(args)
    os.makedirs(cfg.output_path, exist_ok=True)
    schmidt = generation.sample_region(cfg.d, cfg.n, cfg.seed, "schmidt", cfg.workers)
    yb = generation.sample_region(cfg.d, cfg.n, cfg.seed, "yb", cfg.workers)
    schmidt.to_csv(os.path.join(cfg.output_path, "schmidt.csv"))
    yb.to_csv(os.path.join(cfg.output_path, "yb.csv"))
    report = generation.coverage_report(schmidt, yb, cfg.grid)
    record = {
        "d": cfg.d,
        "n": cfg.n,
        "seed": cfg.seed,
        "grid_resolution": report.grid_resolution,
        "bins_target": report.bins_target,
        "bins_covered": report.bins_covered,
        "coverage": report.coverage,
        "sample_counts": list(report.sample_counts),
        "threshold": cfg.threshold,
        "passed": report.coverage >= cfg.threshold,
    }
    emit(record, os.path.join(cfg.output_path, "coverage.json"))
    print(f"coverage {fmt(report.coverage)} ({report.bins_covered}/{report.bins_target} bins), threshold {fmt(cfg.threshold)}")
    return EXIT_OK if record["passed"] else EXIT_CHECK


def cmd_contours(args) -> int:
    generation.contours_to_csv(args.out, steps=args.steps)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_generate(args) -> int:
    theta = parse_angle(args)
    phi = parse_floats(args.phi) if args.phi is not None else (0.0,) * (args.d - 2)
    params = generation.GenerationParams(d=args.d, theta=theta, phi=phi)
    state = generation.generate(params)
    inv = entanglement.invariants(state)
    record = {
        "d": args.d,
        "theta": params.theta,
        "phi": list(params.phi),
        "amplitudes": amplitudes_json(state),
        "I": list(inv.I),
        "Iprime": list(inv.Iprime),
        "C": inv.concurrence,
    }
    emit(record, args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    amps = tensor.load_vector(args.state_file)
    d = math.isqrt(amps.size)
    if d * d != amps.size or d < 2:
        print(f"state length {amps.size} is not a valid two-qudit dimension", file=sys.stderr)
        return EXIT_USAGE
    state = entanglement.TwoQuditState(d=d, amplitudes=amps)
    inv = entanglement.invariants(state)
    emit({"I": list(inv.I), "Iprime": list(inv.Iprime), "C": inv.concurrence}, getattr(args, "out", None))
    return EXIT_OK


def cmd_solve(args) -> int:
    kappa = np.asarray(parse_floats(args.kappa), dtype=float)
    if kappa.size != args.d:
        print(f"expected {args.d} Schmidt coefficients, got {kappa.size}", file=sys.stderr)
        return EXIT_USAGE
    if np.any(kappa < 0):
        print("Schmidt coefficients must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    # user-facing leniency: sort and renormalize before the strict library call
    kappa = np.sort(kappa)[::-1]
    kappa = kappa / np.linalg.norm(kappa)
    try:
        params = generation.solve_parameters(args.d, kappa, tol=args.tol)
    except NoSolutionFound as exc:
        record = {
            "error": "no solution within tolerance",
            "residual": exc.residual,
            "best_theta": exc.best_params.theta,
            "best_phi": list(exc.best_params.phi),
        }
        emit(record, getattr(args, "out", None))
        return EXIT_CHECK
    state = generation.generate(params)
    found = entanglement.schmidt_decompose(state).kappa
    record = {
        "d": args.d,
        "theta": params.theta,
        "phi": list(params.phi),
        "residual": float(np.max(np.abs(found - kappa))),
    }
    emit(record, getattr(args, "out", None))
    return EXIT_OK


def cmd_epower(args) -> int:
    theta = parse_angle(args)
    gate = yang_baxter.r_matrix(args.d, theta).matrix
    est = epower.entangling_power_mc(gate, j=args.j, n=args.n, seed=args.seed, workers=args.workers)
    closed = epower.entangling_power_closed(gate, args.d) if args.j == 1 else None
    record = {
        "d": args.d,
        "theta": theta,
        "j": args.j,
        "mc_mean": est.mean,
        "mc_stderr": est.std_error,
        "closed": closed,
    }
    emit(record, args.out)
    return EXIT_OK


def cmd_dump(args) -> int:
    if args.what == "p":
        mat = yang_baxter.circulation_matrix(args.d, args.shift)
    elif args.what == "m":
        mat = yang_baxter.m_matrix(args.d)
    elif args.what == "swap":
        mat = epower.swap_matrix(args.d)
    else:
        mat = yang_baxter.r_matrix(args.d, parse_angle(args)).matrix
    tensor.save_matrix(args.out, mat)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_load(args) -> int:
    try:
        mat = tensor.load_matrix(args.file)
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, TypeError) as exc:
        print(f"malformed matrix file {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    record = {
        "rows": mat.shape[0],
        "cols": mat.shape[1],
        "hermiticity_residual": tensor.hermiticity_residual(mat) if mat.shape[0] == mat.shape[1] else None,
        "unitarity_residual": tensor.unitarity_residual(mat) if mat.shape[0] == mat.shape[1] else None,
    }
    emit(record, None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _add_common(sub, n_default: int, with_grid: bool = False) -> None:
    sub.add_argument("--n", type=int, default=n_default)
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--workers", type=int, default=None, help="default: YBX_WORKERS or 1")
    if with_grid:
        sub.add_argument("--grid", type=int, default=None, help="bins per axis (default 200 for d=3, else 50)")
        sub.add_argument("--threshold", type=float, default=None, help="coverage pass threshold")


def _add_angle(sub, required: bool = True) -> None:
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--theta", type=float, help="gate phase in radians")
    group.add_argument("--theta-pi", dest="theta_pi", help="gate phase as a rational multiple of pi, e.g. 1/3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybx",
        description="Universal braid-gate toolkit for two qudits: verification, generation, region coverage, entangling power.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the gate's defining relations at random angles")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=50, help="number of random angle pairs")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("region", help="Monte-Carlo invariant-region experiment with coverage scoring")
    p.add_argument("--d", type=int, required=True)
    _add_common(p, DEFAULT_N, with_grid=True)
    p.add_argument("--out", default=".", help="output directory for schmidt.csv, yb.csv, coverage.json")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("contours", help="write the d=3 region boundary curves as CSV")
    p.add_argument("--steps", type=int, default=256)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_contours)

    p = sub.add_parser("generate", help="generate a state from (theta, phi) and print it with its invariants")
    p.add_argument("--d", type=int, required=True)
    _add_angle(p)
    p.add_argument("--phi", default=None, help="comma-separated product-state angles (default all 0)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("invariants", help="invariants of a state stored in a JSON vector file")
    p.add_argument("--state-file", dest="state_file", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("solve", help="find (theta, phi) reproducing a target Schmidt spectrum")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--kappa", required=True, help="comma-separated Schmidt coefficients")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("epower", help="entangling power of the gate at theta: Monte-Carlo and closed form")
    p.add_argument("--d", type=int, required=True)
    _add_angle(p)
    p.add_argument("--j", type=int, default=1, help="invariant order (1 = standard entangling power)")
    _add_common(p, DEFAULT_N)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_epower)

    p = sub.add_parser("dump", help="write a named matrix as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--what", choices=["p", "m", "r", "swap"], required=True)
    p.add_argument("--shift", type=int, default=1, help="shift r for the circulation matrix")
    _add_angle(p, required=False)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("load", help="read a JSON matrix and print a summary record")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_load)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "d"):
        try:
            yang_baxter.validate_dimension(args.d)
        except ValueError as exc:
            parser.error(str(exc))  # exits 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (YbxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
