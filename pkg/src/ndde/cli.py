"""Command-line interface.

Subcommands: ``check`` (run stability tests on an equation file),
``simulate`` (integrate and classify decay), ``threshold`` (bisect a
parameter against a criterion or the simulation oracle), ``sweep``
(tabulate verdicts over a parameter grid), and ``reproduce`` (the
benchmark comparison tables).  The env var NDDE_THREADS caps worker
processes for sweeps and reproduction runs.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import benchmarks, specio
from .criteria import CRITERIA, evaluate_all
from .equation import Term
from .expressions import Constant, ConstantLag, Proportional
from .simulate import (
    bisect_threshold,
    classify,
    default_dt,
    default_t_end,
    estimate_decay,
    integrate,
)
from .verdicts import Claim, Verdict

PARAM_NAMES = ("tau", "sigma", "a", "b", "lambda", "mu")


def _threads() -> int:
    raw = os.environ.get("NDDE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _with_param(eq, name, value):
    """Rebind one named scalar of the leading neutral/delay term."""
    if name in ("sigma", "a", "mu") and not eq.neutral:
        raise ValueError(f"parameter {name!r} needs a neutral term")
    if name in ("tau", "b", "lambda") and not eq.delay:
        raise ValueError(f"parameter {name!r} needs a delay term")
    if name == "tau":
        term = Term(eq.delay[0].coeff, ConstantLag(value))
        return dataclasses.replace(eq, delay=(term,) + eq.delay[1:])
    if name == "sigma":
        term = Term(eq.neutral[0].coeff, ConstantLag(value))
        return dataclasses.replace(eq, neutral=(term,) + eq.neutral[1:])
    if name == "a":
        term = Term(Constant(value), eq.neutral[0].delay)
        return dataclasses.replace(eq, neutral=(term,) + eq.neutral[1:])
    if name == "b":
        term = Term(Constant(value), eq.delay[0].delay)
        return dataclasses.replace(eq, delay=(term,) + eq.delay[1:])
    if name == "lambda":
        term = Term(eq.delay[0].coeff, Proportional(value))
        return dataclasses.replace(eq, delay=(term,) + eq.delay[1:])
    if name == "mu":
        term = Term(eq.neutral[0].coeff, Proportional(value))
        return dataclasses.replace(eq, neutral=(term,) + eq.neutral[1:])
    raise ValueError(
        f"unknown parameter {name!r}; supported: {', '.join(PARAM_NAMES)}"
    )


def _write_json(obj, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _criterion_oracle(cid):
    if cid == "cor1+cor2b-b":
        return benchmarks._criterion_satisfied(cid)
    if cid not in CRITERIA:
        raise ValueError(f"unknown criterion {cid!r}")

    def oracle(eq):
        return CRITERIA[cid](eq).verdict is Verdict.SATISFIED

    return oracle


# ---------------------------------------------------------------------------
# subcommands

def _cmd_check(args) -> int:
    eq = specio.load_equation(args.spec)
    ids = args.criteria.split(",") if args.criteria else None
    for cid in ids or ():
        if cid not in CRITERIA:
            raise ValueError(f"unknown criterion {cid!r}")
    verdicts = evaluate_all(eq, ids)
    if not eq.well_posed:
        print("warning: ill-posed equation (sum of neutral sup-norms >= 1); "
              "all tests are inapplicable", file=sys.stderr)
    _write_json([v.to_dict() for v in verdicts], args.out)
    ok = any(v.verdict is Verdict.SATISFIED and v.claim is Claim.EXPONENTIAL
             for v in verdicts)
    return 0 if ok else 2


def _cmd_simulate(args) -> int:
    eq = specio.load_equation(args.spec)
    t_end = args.t_end if args.t_end is not None else default_t_end(eq)
    dt = args.dt if args.dt is not None else default_dt(eq)
    traj = integrate(eq, t_end, dt, grid=args.grid, eta=args.eta)
    est = estimate_decay(traj)
    sidecar = {
        "classification": est.classification,
        "gamma_hat": est.gamma_hat,
        "M_hat": est.M_hat,
        "r2": est.r2,
        "dt": traj.dt,
        "method": traj.method,
        "fingerprint": traj.fingerprint,
        "max_residual": traj.max_residual,
    }
    lines = ["t,x,xdot"]
    lines.extend(
        f"{_fmt(float(t))},{_fmt(float(x))},{_fmt(float(xd))}"
        for t, x, xd in zip(traj.t, traj.x, traj.xdot)
    )
    body = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        _write_json(sidecar, args.out + ".decay.json")
    else:
        sys.stdout.write(body)
        json.dump(sidecar, sys.stderr, indent=2)
        sys.stderr.write("\n")
    return 0


def _cmd_threshold(args) -> int:
    eq = specio.load_equation(args.spec)
    lo, hi = (float(s) for s in args.range.split(":"))
    if args.oracle == "simulate":
        t_end = args.t_end
        dt = args.dt

        def oracle(e):
            te = t_end if t_end is not None else default_t_end(e)
            d = dt if dt is not None else default_dt(e)
            return classify(e, t_end=te, dt=d).classification == "Decaying"
    else:
        oracle = _criterion_oracle(args.oracle)

    def family(v):
        return _with_param(eq, args.param, v)

    value = bisect_threshold(family, lo, hi, oracle, tol=args.tol)
    _write_json({
        "param": args.param, "lo": lo, "hi": hi,
        "oracle": args.oracle, "tol": args.tol, "threshold": value,
    }, args.out)
    return 0


def _parse_grid(text):
    axes = []
    for part in text.split(","):
        name, _, spec = part.partition("=")
        pieces = spec.split(":")
        if len(pieces) != 3:
            raise ValueError(f"grid axis {part!r} is not name=lo:hi:n")
        lo, hi, n = float(pieces[0]), float(pieces[1]), int(pieces[2])
        if n < 1:
            raise ValueError(f"grid axis {part!r} needs at least one point")
        if n == 1:
            vals = [lo]
        else:
            step = (hi - lo) / (n - 1)
            vals = [lo + k * step for k in range(n)]
        axes.append((name.strip(), vals))
    return axes


def _sweep_eval(job):
    spec_obj, assignment, cids, simulate_too, t_end, dt = job
    eq = specio.parse_equation(spec_obj)
    for name, value in assignment:
        eq = _with_param(eq, name, value)
    row = [f"{value:.9g}" for _name, value in assignment]
    for cid in cids:
        row.append(CRITERIA[cid](eq).verdict.value)
    if simulate_too:
        te = t_end if t_end is not None else default_t_end(eq)
        d = dt if dt is not None else default_dt(eq)
        row.append(classify(eq, t_end=te, dt=d).classification)
    return row


def _cmd_sweep(args) -> int:
    eq = specio.load_equation(args.spec)
    axes = _parse_grid(args.grid)
    total = math.prod(len(vals) for _n, vals in axes)
    if total > 10_000:
        print(f"error: grid has {total} points (limit 10000)", file=sys.stderr)
        return 1
    cids = args.criteria.split(",") if args.criteria else list(CRITERIA)
    for cid in cids:
        if cid not in CRITERIA:
            print(f"error: unknown criterion {cid!r}", file=sys.stderr)
            return 1
    simulate_too = args.oracle == "simulate"
    spec_obj = specio.dump_equation(eq)
    names = [name for name, _vals in axes]
    jobs = [
        (spec_obj, tuple(zip(names, combo)), cids, simulate_too,
         args.t_end, args.dt)
        for combo in itertools.product(*(vals for _n, vals in axes))
    ]
    threads = _threads()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_eval, jobs, chunksize=8))
    else:
        rows = [_sweep_eval(job) for job in jobs]
    header = names + cids + (["simulated"] if simulate_too else [])
    body = "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def _cmd_reproduce(args) -> int:
    if args.which == "example1":
        out = benchmarks.reproduce_example1(fast=args.fast, threads=_threads())
        print(f"{'criterion':14s} {'bisected':>12s} {'closed form':>12s}")
        for row in out["table"]:
            print(f"{row['criterion']:14s} {row['threshold_bisected']:12.6f} "
                  f"{row['threshold_closed_form']:12.6f}")
        for row in out["simulated"]:
            print(f"simulated decay threshold at sigma={row['sigma']:g}: "
                  f"{row['simulated_threshold']:.4f}")
    else:
        out = benchmarks.reproduce_example2()
        print(f"{'sigma':>6s} {'lower':>12s} {'upper':>12s} "
              f"{'primary':>12s} comparison")
        for row in out["table"]:
            verdict = ("interval empty" if row["interval_empty"]
                       else "primary wider" if row["primary_wider"]
                       else "literature wider")
            print(f"{row['sigma']:6.2f} {row['c01star_lower']:12.6f} "
                  f"{row['c01star_upper']:12.6f} "
                  f"{row['primary_threshold']:12.6f} {verdict}")
    if args.out:
        _write_json(out, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ndde",
        description="Stability tests and numerical integration for scalar "
                    "neutral delay differential equations.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run stability tests on an equation file")
    p.add_argument("spec")
    p.add_argument("--criteria", help="comma-separated criterion ids")
    p.add_argument("--out", help="write the JSON verdict array here")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("simulate", help="integrate and classify decay")
    p.add_argument("spec")
    p.add_argument("--t-end", type=float, dest="t_end")
    p.add_argument("--dt", type=float)
    p.add_argument("--grid", choices=("uniform", "geometric"), default="uniform")
    p.add_argument("--eta", type=float, default=1e-3,
                   help="relative step for the geometric grid")
    p.add_argument("--out", help="CSV path; decay JSON lands beside it")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("threshold", help="bisect a parameter threshold")
    p.add_argument("spec")
    p.add_argument("--param", required=True, choices=PARAM_NAMES)
    p.add_argument("--range", required=True, help="lo:hi")
    p.add_argument("--oracle", default="simulate",
                   help="'simulate' or a criterion id")
    p.add_argument("--tol", type=float, default=1e-2)
    p.add_argument("--t-end", type=float, dest="t_end")
    p.add_argument("--dt", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("sweep", help="tabulate verdicts over a parameter grid")
    p.add_argument("spec")
    p.add_argument("--grid", required=True, help="name=lo:hi:n[,name2=lo:hi:n]")
    p.add_argument("--criteria", help="comma-separated criterion ids")
    p.add_argument("--oracle", help="'simulate' adds a simulated column")
    p.add_argument("--t-end", type=float, dest="t_end")
    p.add_argument("--dt", type=float)
    p.add_argument("--out", help="CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("reproduce", help="benchmark comparison tables")
    p.add_argument("which", choices=("example1", "example2"))
    p.add_argument("--fast", action="store_true",
                   help="skip the simulated-threshold columns")
    p.add_argument("--out", help="write the table as JSON here")
    p.set_defaults(func=_cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except specio.SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
