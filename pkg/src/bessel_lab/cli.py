"""Command-line entry point.

Subcommands: extend (write a harmonic extension grid), maximal (maximal
operator profiles), verify <suite> (run a verification suite and write
JSON/CSV reports), plotdata (flatten reports into plot-ready CSVs).

Exit codes: 0 success, 1 suite assertions failed, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .boundary import (
    BoundaryFunction,
    constant,
    gaussian_bump,
    indicator,
    standard_family,
    tent,
)
from .errors import ConfigError, NumericalError
from .extension import poisson_extend
from .maximal import (
    ConeSampling,
    geometric_sweep,
    hardy_littlewood_max,
    maximal_profiles,
)
from .reporting import SuiteConfig
from .suites import emit_plotdata, run_suite, write_suite_result

__all__ = ["main"]


def _parse_f(spec: str) -> BoundaryFunction:
    """indicator:1,2 | tent:1,3 | bump:2,0.3 | const:1,0.5,4 | family names."""
    name, _, args = spec.partition(":")
    vals = [float(v) for v in args.split(",") if v] if args else []
    fam = standard_family()
    try:
        if name in fam and not vals:
            return fam[name]
        if name == "indicator":
            return indicator(vals[0], vals[1])
        if name == "tent":
            return tent(vals[0], vals[1])
        if name == "bump":
            return gaussian_bump(vals[0], vals[1] if len(vals) > 1 else 0.3)
        if name == "const":
            return constant(vals[0], (vals[1], vals[2]))
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"bad boundary function spec {spec!r}: {exc}") from exc
    raise ConfigError(
        f"unknown boundary function {spec!r}; use indicator:a,b, tent:a,b, "
        f"bump:c,s, const:v,a,b, or a family name ({', '.join(fam)})"
    )


def _parse_grid(spec: str) -> np.ndarray:
    """lo:hi:N (linear) or lo:hi:geometric[:ratio]."""
    parts = spec.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        if len(parts) < 3:
            raise ConfigError(f"grid spec {spec!r} missing point count")
        if parts[2] == "geometric":
            ratio = float(parts[3]) if len(parts) > 3 else 1.05
            return geometric_sweep(lo, hi, ratio)
        n = int(parts[2])
        if n < 2:
            raise ConfigError(f"grid spec {spec!r} needs at least 2 points")
        return np.linspace(lo, hi, n)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad grid spec {spec!r}: {exc}") from exc


def _parse_floats(text: str, what: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v)
    except ValueError as exc:
        raise ConfigError(f"bad {what} list {text!r}") from exc
    if not vals:
        raise ConfigError(f"empty {what} list")
    return vals


def _jobs_default() -> int:
    env = os.environ.get("BESSEL_LAB_JOBS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"BESSEL_LAB_JOBS must be an integer, got {env!r}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bessel-lab",
        description="Harmonic extensions, maximal operators, and inequality "
        "verification for the Bessel Laplace equation.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("extend", help="write a harmonic extension grid")
    ext.add_argument("--f", required=True, help="boundary function spec")
    ext.add_argument("--lambda", dest="lam", type=float, required=True)
    ext.add_argument("--tgrid", required=True, help="lo:hi:N or lo:hi:geometric[:r]")
    ext.add_argument("--xgrid", required=True)
    ext.add_argument("--out", required=True, help="CSV output path")
    ext.add_argument("--json", help="optional JSON envelope path")
    ext.add_argument("--n-quad", type=int, default=96, help="nodes per quadrature panel")

    mx = sub.add_parser("maximal", help="maximal operator profiles")
    mx.add_argument("--f", required=True)
    mx.add_argument("--lambda", dest="lam", type=float, required=True)
    mx.add_argument("--xgrid", required=True)
    mx.add_argument(
        "--operator",
        choices=["radial", "nontangential", "hl", "all"],
        default="all",
    )
    mx.add_argument("--q", type=float, default=1.0, help="power for the hl input")
    mx.add_argument("--out-dir", default="maximal_out")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=list(SuiteConfig.KNOWN_SUITES))
    ver.add_argument("--lambda", dest="lambdas", default="0.3,1,2")
    ver.add_argument("--p", dest="p_values", default="0.5,1,2,4")
    ver.add_argument("--q", dest="q_values", default="0.3,0.5,0.8")
    ver.add_argument("--tau", type=float, default=0.9)
    ver.add_argument("--family", default="all")
    ver.add_argument("--resolution", type=int, help="finest resolution (halved for the base level)")
    ver.add_argument("--resolutions", help="explicit ascending list, e.g. 48,96")
    ver.add_argument("--n-balls", type=int, default=40)
    ver.add_argument("--seed", type=int, default=20240803)
    ver.add_argument("--out-dir", default="reports")
    ver.add_argument("--jobs", type=int, default=None)

    pd = sub.add_parser("plotdata", help="flatten reports into plot CSVs")
    pd.add_argument("--reports", nargs="*", default=[])
    pd.add_argument("--out-dir", default="plotdata")
    return ap


def _cmd_extend(args) -> int:
    f = _parse_f(args.f)
    t_nodes = _parse_grid(args.tgrid)
    x_nodes = _parse_grid(args.xgrid)
    grid = poisson_extend(
        f, t_nodes, x_nodes, args.lam, n_y=args.n_quad, n_beta=args.n_quad
    )
    grid.to_csv(args.out)
    if args.json:
        grid.to_json(args.json)
    print(f"wrote {args.out} ({t_nodes.size} x {x_nodes.size} nodes)")
    return 0


def _cmd_maximal(args) -> int:
    f = _parse_f(args.f)
    x_nodes = _parse_grid(args.xgrid)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.operator in ("radial", "nontangential", "all"):
        profs = maximal_profiles(
            f,
            x_nodes,
            args.lam,
            include_nontangential=args.operator != "radial",
        )
        for tag, prof in profs.items():
            if args.operator in (tag, "all"):
                path = out / f"{tag}.csv"
                prof.to_csv(path)
                written.append(path)
    if args.operator in ("hl", "all"):
        prof = hardy_littlewood_max(f, x_nodes, None, args.lam)
        path = out / "hardy_littlewood.csv"
        prof.to_csv(path)
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_verify(args) -> int:
    fam_arg = args.family
    family = (
        tuple(standard_family())
        if fam_arg == "all"
        else tuple(v for v in fam_arg.split(",") if v)
    )
    if args.resolutions:
        try:
            resolutions = tuple(int(v) for v in args.resolutions.split(",") if v)
        except ValueError as exc:
            raise ConfigError(f"bad resolutions {args.resolutions!r}") from exc
    elif args.resolution is not None:
        if args.resolution < 16:
            raise ConfigError("resolution must be at least 16")
        resolutions = (args.resolution // 2, args.resolution)
    else:
        resolutions = (48, 96)
    cfg = SuiteConfig(
        suite=args.suite,
        lambdas=_parse_floats(args.lambdas, "lambda"),
        p_values=_parse_floats(args.p_values, "p"),
        q_values=_parse_floats(args.q_values, "q"),
        tau=args.tau,
        family=family,
        resolutions=resolutions,
        n_balls=args.n_balls,
        seed=args.seed,
        output_dir=args.out_dir,
        jobs=args.jobs if args.jobs is not None else _jobs_default(),
    )
    result = run_suite(cfg)
    paths = write_suite_result(result, args.out_dir)
    n_pass = sum(1 for r in result.reports if r.passed)
    print(
        f"suite {result.name}: {n_pass}/{len(result.reports)} checks passed; "
        f"reports in {paths['json']}"
    )
    return result.exit_code


def _cmd_plotdata(args) -> int:
    written = emit_plotdata(args.reports, args.out_dir)
    for path in written:
        print(f"wrote {path}")
    if not written:
        print("no reports given; empty bundle")
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command == "extend":
            return _cmd_extend(args)
        if args.command == "maximal":
            return _cmd_maximal(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "plotdata":
            return _cmd_plotdata(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
