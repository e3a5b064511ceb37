"""Command-line front end.

Every subcommand writes deterministic CSV/JSON outputs plus a run manifest
with content digests.  Exit codes: 0 success, 2 validation error, 1
computation failure.

alpha can be given as --alpha or --alpha-over-pi; a flat key=value config
file supplies defaults, and flags win over the config file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .eigen import min_eigen
from .extrapolate import (
    DEFAULT_SWEEP_SCHEDULE,
    REFERENCE_SCHEDULE,
    extrapolated_infimum,
    fit_quadratic,
)
from .kernel import RingConfig, build_kernel
from .linelimit import line_limit_min, ring_small_alpha_limit
from .manifest import RunManifest
from .state import (
    current_series,
    make_state,
    maximizing_state,
    mean_energy,
    write_series_csv,
    write_state_csv,
)
from .sweep import find_infimum, sweep_alpha
from .twomode import global_two_mode_min, two_mode_curve


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _read_config(path) -> dict:
    values = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve_alpha(args) -> float:
    if args.alpha is not None and args.alpha_over_pi is not None:
        raise SystemExit2("give either --alpha or --alpha-over-pi, not both")
    if args.alpha is not None:
        return args.alpha
    if args.alpha_over_pi is not None:
        return args.alpha_over_pi * math.pi
    raise SystemExit2("alpha is required (--alpha or --alpha-over-pi)")


class SystemExit2(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _add_alpha_beta(parser, beta_default=None):
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--alpha-over-pi", type=float, default=None)
    parser.add_argument("--beta", type=float, default=beta_default)


def _add_common(parser):
    parser.add_argument("--outdir", type=Path, default=Path("."))
    parser.add_argument("--config", type=Path, default=None)
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("RINGFLOW_JOBS", "1")),
    )


def _schedule_arg(raw: str) -> list[int]:
    return [int(tok) for tok in raw.replace(",", " ").split()]


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise SystemExit2(f"--{name.replace('_', '-')} is required")


def _start(args, name) -> tuple[RunManifest, Path]:
    args.outdir.mkdir(parents=True, exist_ok=True)
    params = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in vars(args).items()
        if k not in ("func", "config") and v is not None
    }
    return RunManifest(command=name, parameters=params), args.outdir


def cmd_eigen(args) -> int:
    _require(args, "n")
    alpha = _resolve_alpha(args)
    manifest, outdir = _start(args, "eigen")
    kernel = build_kernel(RingConfig(alpha, args.beta, args.n))
    result = min_eigen(kernel, args.method)
    record = result.to_record()
    record.update({"alpha": alpha, "beta": kernel.config.beta})
    out = outdir / "eigen.json"
    out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    manifest.add_output(out)
    manifest.write(outdir / "eigen.manifest.json")
    print(f"lambda_min = {_fmt(result.lambda_min)}")
    return 0


def cmd_extrapolate(args) -> int:
    alpha = _resolve_alpha(args)
    manifest, outdir = _start(args, "extrapolate")
    p, fit = extrapolated_infimum(alpha, args.beta, args.schedule, args.method)
    record = fit.to_record()
    record.update({"alpha": alpha, "beta": args.beta, "p_estimate": p})
    out = outdir / "extrapolation.json"
    out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    manifest.add_output(out)
    manifest.write(outdir / "extrapolate.manifest.json")
    print(f"P estimate = {_fmt(p)}")
    return 0


def cmd_sweep(args) -> int:
    _require(args, "alpha_over_pi_min", "alpha_over_pi_max", "steps")
    manifest, outdir = _start(args, "sweep")
    grid = np.linspace(args.alpha_over_pi_min, args.alpha_over_pi_max, args.steps)
    records = sweep_alpha(
        args.beta, [a * math.pi for a in grid], args.schedule, jobs=args.jobs
    )
    out = outdir / "sweep.csv"
    with open(out, "w") as fh:
        fh.write("alpha_over_pi,beta,p,residual\n")
        for rec in records:
            if rec.error is not None:
                fh.write(f"{_fmt(rec.alpha / math.pi)},{_fmt(rec.beta)},nan,nan\n")
            else:
                fh.write(
                    f"{_fmt(rec.alpha / math.pi)},{_fmt(rec.beta)},"
                    f"{_fmt(rec.p_estimate)},{_fmt(rec.fit_residual)}\n"
                )
    manifest.add_output(out)
    manifest.write(outdir / "sweep.manifest.json")
    failures = sum(1 for r in records if r.error is not None)
    print(f"wrote {out} ({len(records)} points, {failures} failed)")
    return 0 if failures == 0 else 1


def cmd_infimum(args) -> int:
    _require(args, "alpha_over_pi_min", "alpha_over_pi_max")
    manifest, outdir = _start(args, "infimum")
    result = find_infimum(
        (args.alpha_over_pi_min * math.pi, args.alpha_over_pi_max * math.pi),
        (args.beta_min, args.beta_max),
        budget=args.budget,
        jobs=args.jobs,
    )
    record = {
        "alpha_over_pi": result.alpha / math.pi,
        "beta": result.beta,
        "p": result.p,
        "evaluations": result.evaluations,
        "budget_exhausted": result.budget_exhausted,
        "stages": result.stages,
    }
    out = outdir / "infimum.json"
    out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    manifest.add_output(out)
    manifest.write(outdir / "infimum.manifest.json")
    print(
        f"alpha/pi* = {_fmt(result.alpha / math.pi)}  beta* = {_fmt(result.beta)}  "
        f"p* = {_fmt(result.p)}"
    )
    return 0


def cmd_twomode(args) -> int:
    manifest, outdir = _start(args, "twomode")
    if args.global_opt:
        alpha_s, beta_s, p_s = global_two_mode_min(args.m1, args.m2)
        record = {
            "m1": args.m1,
            "m2": args.m2,
            "alpha_over_pi": alpha_s / math.pi,
            "beta": beta_s,
            "p_min": p_s,
        }
        out = outdir / "twomode_global.json"
        out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
        manifest.add_output(out)
        manifest.write(outdir / "twomode.manifest.json")
        print(f"p* = {_fmt(p_s)} at alpha/pi = {_fmt(alpha_s / math.pi)}, beta = {_fmt(beta_s)}")
        return 0
    grid = np.linspace(args.alpha_over_pi_min, args.alpha_over_pi_max, args.steps)
    rows = two_mode_curve(args.m1, args.m2, grid)
    out = outdir / "twomode_curve.csv"
    with open(out, "w") as fh:
        fh.write("alpha_over_pi,beta,p_min\n")
        for aop, b, p in rows:
            fh.write(f"{_fmt(aop)},{_fmt(b)},{_fmt(p)}\n")
    manifest.add_output(out)
    manifest.write(outdir / "twomode.manifest.json")
    print(f"wrote {out}")
    return 0


def cmd_state(args) -> int:
    _require(args, "n")
    alpha = _resolve_alpha(args)
    manifest, outdir = _start(args, "state")
    state = maximizing_state(alpha, args.beta, args.n, args.method)
    out = outdir / "state.csv"
    write_state_csv(state, out)
    manifest.add_output(out)
    c0 = abs(state.coeffs[0])
    m = np.arange(1, len(state.coeffs))
    decay_ok = bool(np.all(np.abs(state.coeffs[1:]) < c0 / m**2))
    report = {
        "lambda_min": state.lambda_min,
        "mean_energy": mean_energy(state),
        "coefficient_decay_below_c0_over_m2": decay_ok,
    }
    rep = outdir / "state_report.json"
    rep.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    manifest.add_output(rep)
    manifest.write(outdir / "state.manifest.json")
    print(f"lambda_min = {_fmt(state.lambda_min)}  <E>T/hbar = {_fmt(report['mean_energy'])}")
    return 0


def _load_state_csv(path):
    header = None
    coeffs = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            header = dict(tok.split("=") for tok in line[1:].split())
        elif line and not line.startswith("m,"):
            _, re_c, im_c = line.split(",")
            coeffs.append(complex(float(re_c), float(im_c)))
    if header is None:
        raise ValueError(f"state file {path} has no header line")
    return make_state(np.array(coeffs), float(header["alpha"]), float(header["beta"]))


def cmd_current(args) -> int:
    manifest, outdir = _start(args, "current")
    if args.state_file is not None:
        state = _load_state_csv(args.state_file)
    else:
        alpha = _resolve_alpha(args)
        state = maximizing_state(alpha, args.beta, args.n, args.method)
    series = current_series(state, args.theta, (args.tau_min, args.tau_max), args.samples)
    out = outdir / "current.csv"
    write_series_csv(series, out)
    manifest.add_output(out)
    manifest.write(outdir / "current.manifest.json")
    print(f"wrote {out}")
    return 0


def cmd_linelimit(args) -> int:
    manifest, outdir = _start(args, "linelimit")
    if args.ring_route:
        alpha = _resolve_alpha(args)
        value = ring_small_alpha_limit(alpha, args.beta, args.n)
        record = {"route": "ring", "alpha": alpha, "n_trunc": args.n, "lambda_min": value}
    else:
        value = line_limit_min(args.u_max, args.n_points)
        record = {
            "route": "nystrom",
            "u_max": args.u_max,
            "n_points": args.n_points,
            "lambda_min": value,
        }
    out = outdir / "linelimit.json"
    out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    manifest.add_output(out)
    manifest.write(outdir / "linelimit.manifest.json")
    print(f"lambda_min = {_fmt(value)}")
    return 0


def cmd_verify(args) -> int:
    failures = verify_mod.run_all()
    print(f"{failures} failure(s)")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringflow",
        description="Backflow bound for a charged particle on a ring",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eigen", help="smallest kernel eigenvalue at one (alpha, beta, N)")
    _add_alpha_beta(p, beta_default=0.0)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--method", choices=("auto", "dense", "iterative"), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("extrapolate", help="extrapolate lambda_min over a truncation schedule")
    _add_alpha_beta(p, beta_default=0.0)
    p.add_argument("--schedule", type=_schedule_arg, default=list(DEFAULT_SWEEP_SCHEDULE))
    p.add_argument("--reference-schedule", action="store_true",
                   help="use the 15-point high-accuracy schedule")
    p.add_argument("--method", choices=("auto", "dense", "iterative"), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_extrapolate)

    p = sub.add_parser("sweep", help="sweep the extrapolated infimum over an alpha grid")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--alpha-over-pi-min", type=float, default=None)
    p.add_argument("--alpha-over-pi-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--schedule", type=_schedule_arg, default=list(DEFAULT_SWEEP_SCHEDULE))
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("infimum", help="staged grid search for the global infimum")
    p.add_argument("--alpha-over-pi-min", type=float, default=None)
    p.add_argument("--alpha-over-pi-max", type=float, default=None)
    p.add_argument("--beta-min", type=float, default=0.0)
    p.add_argument("--beta-max", type=float, default=0.0)
    p.add_argument("--budget", type=int, default=200)
    _add_common(p)
    p.set_defaults(func=cmd_infimum)

    p = sub.add_parser("twomode", help="two-mode closed-form curve or global optimum")
    p.add_argument("--m1", type=int, default=0)
    p.add_argument("--m2", type=int, default=1)
    p.add_argument("--global", dest="global_opt", action="store_true")
    p.add_argument("--alpha-over-pi-min", type=float, default=0.01)
    p.add_argument("--alpha-over-pi-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=400)
    _add_common(p)
    p.set_defaults(func=cmd_twomode)

    p = sub.add_parser("state", help="backflow-maximizing state and decay report")
    _add_alpha_beta(p, beta_default=0.0)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--method", choices=("auto", "dense", "iterative"), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("current", help="time-resolved current of a state")
    _add_alpha_beta(p, beta_default=0.0)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--state-file", type=Path, default=None)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--tau-min", type=float, default=-1.5)
    p.add_argument("--tau-max", type=float, default=1.5)
    p.add_argument("--samples", type=int, default=4001)
    p.add_argument("--method", choices=("auto", "dense", "iterative"), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_current)

    p = sub.add_parser("linelimit", help="straight-line constant via Nystrom or ring route")
    p.add_argument("--u-max", type=float, default=10.0)
    p.add_argument("--n-points", type=int, default=2000)
    p.add_argument("--ring-route", action="store_true")
    _add_alpha_beta(p, beta_default=0.0)
    p.add_argument("--n", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_linelimit)

    p = sub.add_parser("verify", help="run the fast oracle/property suite")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def _convert(raw: str):
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def _apply_config(args, argv) -> None:
    """Overlay config-file values onto parsed args, with flags winning.

    A config key applies only when the matching flag was not given on the
    command line and the subcommand actually has that option, which gives the
    precedence flags > config file > defaults.
    """
    if getattr(args, "config", None) is None:
        return
    explicit = {
        tok[2:].split("=", 1)[0].replace("-", "_")
        for tok in argv
        if tok.startswith("--")
    }
    values = _read_config(args.config)
    if {"alpha", "alpha_over_pi"} & explicit:
        values.pop("alpha", None)
        values.pop("alpha_over_pi", None)
    for key, raw in values.items():
        if key in explicit or not hasattr(args, key):
            continue
        setattr(args, key, _schedule_arg(raw) if key == "schedule" else _convert(raw))


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, argv)
    if getattr(args, "reference_schedule", False):
        args.schedule = list(REFERENCE_SCHEDULE)
    try:
        return args.func(args)
    except SystemExit2:
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
