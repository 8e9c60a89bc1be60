"""Command-line front end.

Exit codes: 0 success / everything verified, 1 a verification failed or was
indeterminate (or a computation raised), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from decimal import Decimal, InvalidOperation
from functools import partial
from typing import Iterable, Iterator

import numpy as np

from vsmooth.exact.better import (
    DEFAULT_MAX_BITS,
    DEFAULT_START_BITS,
    PrecisionConfig,
    ku_double_root_check,
    verify_better_bound,
)
from vsmooth.exact.lower import verify_factorization, verify_positivity
from vsmooth.exact.report import SCHEMA_VERSION, Check, Status, VerificationReport
from vsmooth.functions import DomainError, FunctionModel, parse_function_spec, parse_number
from vsmooth.performance import DEFAULT_QUAD_TOL, perf_sweep
from vsmooth.smoothing import (
    ShiftedBound,
    build_cubic,
    build_cubic_root,
    check_tdelta,
    lambda_hat,
    linear_extrapolation,
)

MAX_BITS_ENV = "VSMOOTH_MAX_BITS"


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Shortest round-trip decimal for floats; empty for missing values."""
    if x is None:
        return ""
    return repr(float(x) + 0.0)  # + 0.0 folds -0.0 into 0.0


def parse_q_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad q range {text!r}; expected N or A..B") from None
    if not 2 <= lo <= hi:
        raise UsageError(f"q range must satisfy 2 <= q_min <= q_max, got {text!r}")
    return range(lo, hi + 1)


def parse_p_grid(text: str) -> list[float]:
    try:
        a, b, step = (Decimal(t) for t in text.split(":"))
    except (ValueError, InvalidOperation):
        raise UsageError(f"bad p grid {text!r}; expected a:b:step") from None
    if not (0 < a <= b < 1) or step <= 0:
        raise UsageError(f"p grid must satisfy 0 < a <= b < 1 and step > 0, got {text!r}")
    n = int((b - a) / step)
    return [float(a + i * step) for i in range(n + 1)]


def _delta(args) -> float:
    if args.delta is None:
        raise UsageError("--delta is required")
    if not args.delta > 0:
        raise UsageError(f"--delta must be positive, got {args.delta}")
    return args.delta


def _model(args) -> FunctionModel:
    if args.function is None:
        raise UsageError("--function is required")
    try:
        return parse_function_spec(args.function)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


@contextmanager
def _output(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _csv_writer(out):
    return csv.writer(out, lineterminator="\n")


# -- coeffs ----------------------------------------------------------------
def cmd_coeffs(args) -> int:
    delta = _delta(args)
    if args.p is not None:
        if args.function is not None:
            raise UsageError("give either --function or --p, not both")
        p = parse_number(args.p)
        try:
            s = build_cubic_root(p, delta)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        f = s.tail
    else:
        f = _model(args)
        s = build_cubic(f, delta)
    try:
        lam = lambda_hat(f, s)
    except (DomainError, ArithmeticError):
        lam = None
    fields = {
        "function": f.label,
        "delta": delta,
        "A": s.A,
        "B": s.B,
        "C": s.C,
        "g_prime_0": s.C,
        "lambda_hat": lam,
    }
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps({"schema_version": SCHEMA_VERSION, **fields}) + "\n")
        elif args.format == "csv":
            w = _csv_writer(out)
            w.writerow(list(fields))
            w.writerow([fields["function"]] + [fmt(v) for k, v in fields.items() if k != "function"])
        else:
            out.write(f"function={f.label}\n")
            for k in ("delta", "A", "B", "C", "g_prime_0"):
                out.write(f"{k}={fmt(fields[k])}\n")
            out.write(f"lambda_hat={fmt(lam) if lam is not None else 'n/a'}\n")
    return 0


# -- compare ---------------------------------------------------------------
def compare_rows(f: FunctionModel, delta: float, samples: int) -> list[list]:
    s = build_cubic(f, delta)
    try:
        h = ShiftedBound(lambda_hat(f, s), f)
    except (DomainError, ArithmeticError):
        h = None
    w = np.linspace(0.0, 2.0 * delta, samples + 1)
    cols = [
        w,
        np.asarray(f.eval(w), dtype=float),
        np.asarray(s.eval(w), dtype=float),
        np.asarray(h.eval(w), dtype=float) if h is not None else [None] * len(w),
        np.asarray(linear_extrapolation(f, delta, w), dtype=float),
    ]
    return [list(row) for row in zip(*cols)]


def cmd_compare(args) -> int:
    delta = _delta(args)
    f = _model(args)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    rows = compare_rows(f, delta, args.samples)
    names = ["w", "f", "g", "h", "linext"]
    with _output(args.out) as out:
        if args.format == "json":
            data = [dict(zip(names, (None if v is None else float(v) for v in r))) for r in rows]
            out.write(json.dumps({"schema_version": SCHEMA_VERSION, "rows": data}) + "\n")
        else:
            w = _csv_writer(out)
            w.writerow(names)
            for r in rows:
                w.writerow([fmt(v) for v in r])
    return 0


# -- verify ----------------------------------------------------------------
def _lower_task(q: int) -> list[VerificationReport]:
    return [verify_factorization(q), verify_positivity(q)]


def _better_task(q: int, precision: PrecisionConfig) -> list[VerificationReport]:
    return [verify_better_bound(q, precision)]


def _double_root_task(q: int, bits: int) -> list[VerificationReport]:
    return [ku_double_root_check(q, bits)]


def run_campaign(task, qs: Iterable[int], jobs: int) -> Iterator[VerificationReport]:
    """Per-q reports in ascending q, whatever order the workers finish in."""
    qs = list(qs)
    if jobs <= 1 or len(qs) <= 1:
        for q in qs:
            yield from task(q)
        return
    chunk = max(1, len(qs) // (8 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for reports in pool.map(task, qs, chunksize=chunk):
            yield from reports


def _precision(args) -> PrecisionConfig:
    max_bits = args.max_bits
    if max_bits is None:
        env = os.environ.get(MAX_BITS_ENV)
        try:
            max_bits = int(env) if env else DEFAULT_MAX_BITS
        except ValueError:
            raise UsageError(f"{MAX_BITS_ENV} must be an integer, got {env!r}") from None
    try:
        return PrecisionConfig(args.start_bits, max_bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(args) -> int:
    if args.check == "tdelta":
        f, delta = _model(args), _delta(args)
        res = check_tdelta(f, delta)
        reports: Iterable[VerificationReport] = [
            VerificationReport(
                None, Check.TDELTA,
                Status.VERIFIED if res.satisfied else Status.FAILED,
                {"function": f.label, "delta": delta, "margin": res.margin},
            )
        ]
    else:
        if args.q is None:
            raise UsageError("--q is required for this check")
        qs = parse_q_range(args.q)
        jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
        if jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if args.check == "lower":
            task = _lower_task
        elif args.check == "better":
            task = partial(_better_task, precision=_precision(args))
        else:
            task = partial(_double_root_task, bits=max(args.start_bits, 256))
        reports = run_campaign(task, qs, jobs)

    all_ok = True
    collected = []
    with _output(args.out) as out:
        for r in reports:
            all_ok &= r.ok
            obj = r.to_json(timings=args.timings)
            if args.format == "jsonl":
                out.write(json.dumps(obj) + "\n")
                out.flush()
            elif args.format == "text":
                extra = " ".join(f"{k}={v}" for k, v in r.evidence.items() if k != "sign_runs")
                head = f"q={r.q} " if r.q is not None else ""
                out.write(f"{head}{r.check.value} {r.status.value} {extra}".rstrip() + "\n")
            else:
                collected.append(obj)
        if args.format == "json":
            out.write(json.dumps(collected, indent=1) + "\n")
    return 0 if all_ok else 1


# -- perf ------------------------------------------------------------------
def cmd_perf(args) -> int:
    if args.p_grid is None:
        raise UsageError("--p-grid is required")
    grid = parse_p_grid(args.p_grid)
    if not args.quad_tol > 0:
        raise UsageError("--quad-tol must be positive")
    results = perf_sweep(grid, args.quad_tol)
    with _output(args.out) as out:
        if args.format == "json":
            rows = [
                {"p": r.p, "g_measure": r.g_measure, "h_measure": r.h_measure, "gap": r.gap}
                for r in results
            ]
            out.write(json.dumps({"schema_version": SCHEMA_VERSION, "rows": rows}) + "\n")
        else:
            w = _csv_writer(out)
            w.writerow(["p", "g_measure", "h_measure", "gap"])
            for r in results:
                w.writerow([fmt(r.p), fmt(r.g_measure), fmt(r.h_measure), fmt(r.gap)])
    return 0


# -- parser ----------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vsmooth", description="Cubic smoothing of root-like functions: build, compare, certify."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("coeffs", help="cubic coefficients and matching shift")
    p.add_argument("--function", help="function spec, e.g. root:1/2, log1p, sum:root:1/2*1+log1p*2")
    p.add_argument("--p", help="root exponent (decimal or 1/q); closed-form coefficients")
    p.add_argument("--delta", type=float)
    common(p, ["text", "json", "csv"], "text")
    p.set_defaults(handler=cmd_coeffs)

    p = sub.add_parser("compare", help="f, g, h and the linear extrapolation on [0, 2 delta]")
    p.add_argument("--function")
    p.add_argument("--delta", type=float)
    p.add_argument("--samples", type=int, default=200)
    common(p, ["csv", "json"], "csv")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("verify", help="exact certificates and the T_delta condition")
    p.add_argument("check", choices=["lower", "better", "double-root", "tdelta"])
    p.add_argument("--q", help="N or A..B")
    p.add_argument("--function")
    p.add_argument("--delta", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--start-bits", type=int, default=DEFAULT_START_BITS)
    p.add_argument("--max-bits", type=int)
    p.add_argument("--timings", action="store_true", help="add wall-clock millis to each report")
    common(p, ["json", "jsonl", "text"], "json")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("perf", help="average relative performance sweep over p")
    p.add_argument("--p-grid", help="a:b:step inside (0, 1)")
    p.add_argument("--quad-tol", type=float, default=DEFAULT_QUAD_TOL)
    common(p, ["csv", "json"], "csv")
    p.set_defaults(handler=cmd_perf)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError) as exc:
        print(f"vsmooth: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
