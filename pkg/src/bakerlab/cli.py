"""Command-line driver: build quantized maps, diagonalize, count, fit, and
export figure-ready CSV/JSON.

Subcommands: ``spectrum`` (eigenvalues per N), ``weyl`` (counting curves and
slope fits), ``classical`` (trapped covers, dimension fit, escape profile).
Exit codes: 0 success, 2 usage error, 3 solver failure.  The environment
variable BAKERSPEC_THREADS caps the worker pool used for independent N jobs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .classical import box_dimension, escape_profile, trapped_cover
from .quantum import PlanckIndex, Scheme, closed_baker_matrix, open_baker_matrix, parity_blocks
from .spectra import (
    InsufficientDataError,
    NonConvergenceError,
    counting_function,
    default_radius_grid,
    full_spectrum,
    weyl_fit,
)
from .walsh import analytic_spectrum, toy_matrix

#: Dense-solver memory guard: a 3^8 complex matrix is already ~0.7 GB to solve.
MAX_DIMENSION = 3**8

MAX_COVER_DEPTH = 20

USAGE_ERROR = 2
SOLVER_ERROR = 3


class UsageError(Exception):
    pass


def _parse_geometric(text: str) -> list[int]:
    """'N0:kmax' -> [N0*3, N0*9, ..., N0*3^kmax]."""
    try:
        n0, kmax = (int(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"--geometric expects 'N0:kmax', got {text!r}")
    if n0 < 1 or kmax < 1:
        raise UsageError("--geometric needs N0 >= 1 and kmax >= 1")
    return [n0 * 3**j for j in range(1, kmax + 1)]


def _parse_radii(text: str) -> np.ndarray:
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"--radii expects 'lo:hi:steps', got {text!r}")
    if not (0 < lo <= hi <= 1 and steps >= 1):
        raise UsageError("--radii needs 0 < lo <= hi <= 1 and steps >= 1")
    return np.linspace(lo, hi, steps)


def _resolve_dimensions(args) -> list[int]:
    Ns: list[int] = []
    if args.N:
        Ns.extend(args.N)
    if args.geometric:
        Ns.extend(_parse_geometric(args.geometric))
    if not Ns:
        raise UsageError("specify --N or --geometric")
    Ns = sorted(set(Ns))
    for n in Ns:
        if n % 3 != 0:
            raise UsageError(f"N = {n} is invalid: N must be divisible by 3")
        if n > MAX_DIMENSION:
            raise UsageError(
                f"N = {n} exceeds the dense-solver memory guard (max {MAX_DIMENSION})"
            )
    return Ns


def _max_workers(n_jobs: int) -> int:
    cap = os.environ.get("BAKERSPEC_THREADS")
    if cap is not None:
        try:
            cap = int(cap)
        except ValueError:
            raise UsageError(f"BAKERSPEC_THREADS must be an integer, got {cap!r}")
        if cap < 1:
            raise UsageError("BAKERSPEC_THREADS must be >= 1")
        return max(1, min(n_jobs, cap))
    return max(1, min(n_jobs, os.cpu_count() or 1, 4))


def _run_jobs(fn, items):
    workers = _max_workers(len(items))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _map_kind(args) -> str:
    if args.map == "open-baker" and args.parity != "none":
        return f"open-baker-{args.parity}"
    return args.map


def _build_and_solve(args, N: int):
    scheme = Scheme(args.scheme)
    kind = _map_kind(args)
    if args.map == "walsh":
        mat = toy_matrix(N)
    else:
        P = PlanckIndex(N, scheme)
        if args.map == "closed-baker":
            mat = closed_baker_matrix(P)
        elif args.parity == "none":
            mat = open_baker_matrix(P)
        else:
            even, odd = parity_blocks(P)
            mat = even if args.parity == "even" else odd
    return full_spectrum(mat, N=N, map_kind=kind, scheme=args.scheme)


def _validate_map_options(args) -> None:
    if args.map == "walsh" and args.scheme != "plain":
        raise UsageError("the walsh toy model has no quantization scheme; use plain")
    if args.parity != "none":
        if args.map != "open-baker":
            raise UsageError("--parity applies to the open baker only")
        if args.scheme != "antiperiodic":
            raise UsageError("parity separation requires --scheme antiperiodic")


def cmd_spectrum(args) -> int:
    Ns = _resolve_dimensions(args)
    _validate_map_options(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kind = _map_kind(args)

    def job(N: int):
        record = _build_and_solve(args, N)
        path = out / f"spectrum_{kind}_{args.scheme}_N{N}.csv"
        io.write_spectrum_csv(path, record)
        print(f"wrote {path}")
        return record

    records = _run_jobs(job, Ns)
    summary_rows = [
        (
            r.N,
            r.map_kind,
            r.scheme,
            r.dim,
            int(np.sum(r.moduli < args.tol_kernel)),
            format(float(r.moduli.max()), ".17g"),
            format(r.solver_residual, ".17g"),
        )
        for r in records
    ]
    io.write_rows(
        out / "spectrum_summary.csv",
        ["N", "map_kind", "scheme", "dim", "kernel_dim", "max_modulus", "solver_residual"],
        summary_rows,
    )
    if args.map == "walsh":
        io.write_walsh_core_json(out / "walsh_core.json")
        for record in records:
            k = round(math.log(record.N, 3))
            if 3**k != record.N:
                continue
            spec = analytic_spectrum(
                k, eigenvalues=record.eigenvalues if k <= 7 else None,
                multiplicities="measured" if k <= 7 else "derived",
            )
            io.write_analytic_spectrum_csv(out / f"walsh_analytic_k{k}.csv", spec)
    return 0


def cmd_weyl(args) -> int:
    Ns = _resolve_dimensions(args)
    _validate_map_options(args)
    if len(Ns) < 3:
        raise UsageError(f"slope fits need at least 3 values of N, got {len(Ns)}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kind = _map_kind(args)
    fit_radii = sorted(set(args.r)) if args.r else [0.03, 0.5]
    grid = _parse_radii(args.radii) if args.radii else default_radius_grid()
    grid = np.unique(np.concatenate([grid, np.array(fit_radii)]))

    def job(N: int):
        record = _build_and_solve(args, N)
        curve = counting_function(record, grid)
        path = out / f"counting_{kind}_{args.scheme}_N{N}.csv"
        io.write_counting_csv(path, curve)
        print(f"wrote {path}")
        return curve

    curves = _run_jobs(job, Ns)
    summary_rows = []
    for r in fit_radii:
        fit = weyl_fit(curves, r)
        path = out / f"weyl_fit_r{r:g}.json"
        io.write_weyl_json(path, fit)
        print(f"wrote {path}")
        summary_rows.append(
            (
                format(r, ".17g"),
                format(fit.slope, ".17g"),
                format(fit.intercept, ".17g"),
                format(fit.rms_residual, ".17g"),
                "0.63093",
                format(fit.slope - 0.63093, ".17g"),
            )
        )
    io.write_rows(
        out / "weyl_summary.csv",
        ["radius", "slope", "intercept", "rms_residual", "target", "deviation"],
        summary_rows,
    )
    return 0


def cmd_classical(args) -> int:
    if args.depth < 0 or args.depth > MAX_COVER_DEPTH:
        raise UsageError(f"--depth must lie in [0, {MAX_COVER_DEPTH}]")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cover = trapped_cover(args.depth)
    estimate = box_dimension(cover) if args.depth >= 2 else None
    path = out / f"trapped_cover_depth{args.depth}.csv"
    io.write_cover_csv(path, cover, estimate)
    print(f"wrote {path}")
    if estimate is not None:
        payload = {
            "value": estimate.value,
            "residual": estimate.residual,
            "scales": list(estimate.scales),
            "target": math.log(2) / math.log(3),
        }
        (out / "dimension.json").write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {out / 'dimension.json'}")
    if args.escape_tmax is not None:
        rows = escape_profile(args.escape_points, args.escape_tmax)
        io.write_rows(
            out / "escape_profile.csv",
            ["t", "survivors", "fraction"],
            ((t, n, format(f, ".17g")) for t, n, f in rows),
        )
        print(f"wrote {out / 'escape_profile.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bakerlab",
        description="Spectra of quantized open baker maps and fractal Weyl counting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_map_options(p):
        p.add_argument("--map", required=True,
                       choices=["closed-baker", "open-baker", "walsh"])
        p.add_argument("--scheme", default="plain",
                       choices=["plain", "antiperiodic"])
        p.add_argument("--N", type=int, action="append",
                       help="dimension, divisible by 3 (repeatable)")
        p.add_argument("--geometric", metavar="N0:KMAX",
                       help="geometric sequence N0*3^j, j = 1..kmax")
        p.add_argument("--parity", default="none", choices=["none", "even", "odd"])
        p.add_argument("--out", default=".", help="output directory")

    sp = sub.add_parser("spectrum", help="diagonalize and export eigenvalues")
    add_map_options(sp)
    sp.add_argument("--tol-kernel", type=float, default=1e-8,
                    help="modulus threshold for the kernel count in the summary")
    sp.set_defaults(fn=cmd_spectrum)

    wp = sub.add_parser("weyl", help="counting curves and slope fits")
    add_map_options(wp)
    wp.add_argument("--r", type=float, action="append",
                    help="fit radius (repeatable; default 0.03 and 0.5)")
    wp.add_argument("--radii", metavar="LO:HI:STEPS",
                    help="radius grid for the counting curves")
    wp.set_defaults(fn=cmd_weyl)

    cp = sub.add_parser("classical", help="trapped covers and dimension fit")
    cp.add_argument("--depth", type=int, default=10)
    cp.add_argument("--escape-tmax", type=int, default=None,
                    help="also write an escape-time profile up to this time")
    cp.add_argument("--escape-points", type=int, default=100000)
    cp.add_argument("--out", default=".", help="output directory")
    cp.set_defaults(fn=cmd_classical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except NonConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return SOLVER_ERROR
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
