"""Command-line interface: ``itea run|bench|static``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import harness
from .algorithms import VARIANTS, Hyperparameters, run
from .problems import PROBLEMS, make_problem


class UsageError(Exception):
    pass


class _DefaultsFormatter(argparse.HelpFormatter):
    """Append ``(default: ...)`` unless the help text already states one."""

    def _get_help_string(self, action):
        text = action.help or ""
        if "default:" in text or action.default in (None, argparse.SUPPRESS) or not action.option_strings:
            return text
        return f"{text} (default: %(default)s)"


def _add_common(p: argparse.ArgumentParser, static: bool = False) -> None:
    p.add_argument("--algorithm", choices=VARIANTS, default="it" if static else "eit",
                   help="algorithm variant (default: %(default)s)")
    p.add_argument("--function", choices=sorted(PROBLEMS), default="onemax",
                   help="benchmark function (default: %(default)s)")
    p.add_argument("--n", type=int, default=100, help="dimension (default: %(default)s)")
    if static:
        p.add_argument("--lambda", dest="lam", type=int, help="population size (default: n)")
        p.add_argument("--p0", type=float, default=0.1, help="initial mutation rate (default: %(default)s)")
        p.add_argument("--alpha", type=float, default=0.05, help="learning rate (default: %(default)s)")
        p.add_argument("--p-min", dest="p_min", type=float, default=0.0,
                       help="lower rate bound (default: %(default)s)")
        p.add_argument("--p-max", dest="p_max", type=float, default=1.0,
                       help="upper rate bound (default: %(default)s)")
    else:
        p.add_argument("--lambda", dest="lam", type=int, help="population size (default: max(1, n // 10))")
        p.add_argument("--p0", type=float, help="initial mutation rate (default: 1/n)")
        p.add_argument("--alpha", type=float, default=0.2, help="learning rate (default: %(default)s)")
        p.add_argument("--p-min", dest="p_min", type=float, help="lower rate bound (default: p0)")
        p.add_argument("--p-max", dest="p_max", type=float, default=0.5,
                       help="upper rate bound (default: %(default)s)")
    p.add_argument("--mu", type=int, default=1, help="number of selected offspring (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    p.add_argument("--out", help="output file, written atomically (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itea", description="Information-theoretic evolutionary algorithms on bit vectors.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_run = sub.add_parser("run", help="single seeded run with a trace",
                           formatter_class=_DefaultsFormatter)
    _add_common(p_run)
    p_run.add_argument("--budget", type=int,
                       help="evaluation budget (default: 10^4 n for onemax, 10^2 n^2 for leadingones)")
    p_run.add_argument("--trace-every", dest="trace_every", type=int, default=1,
                       help="record every k-th iteration; 0 disables the trace")
    p_run.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")

    p_bench = sub.add_parser("bench", help="fixed-target campaign of independent runs",
                             formatter_class=_DefaultsFormatter)
    _add_common(p_bench)
    p_bench.add_argument("--runs", type=int, default=100, help="number of runs")
    p_bench.add_argument("--budget", type=int,
                         help="evaluation budget per run (default: 10^4 n for onemax, 10^2 n^2 for leadingones)")
    p_bench.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_bench.add_argument("--format", choices=("json", "csv"), default="json", help="output format")

    p_static = sub.add_parser("static", help="rate-only search around a frozen center",
                              formatter_class=_DefaultsFormatter)
    _add_common(p_static, static=True)
    p_static.add_argument("--initial-weight", dest="initial_weight", type=int,
                          help="Hamming weight of the frozen center (default: n // 2)")
    p_static.add_argument("--iterations", type=int, default=10_000, help="number of rate updates")
    p_static.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    return parser


def _hyperparameters(args, static: bool = False) -> Hyperparameters:
    n = args.n
    if n < 1:
        raise UsageError("--n must be >= 1")
    lam = args.lam if args.lam is not None else (n if static else max(1, n // 10))
    p0 = args.p0 if args.p0 is not None else 1.0 / n
    p_min = args.p_min if args.p_min is not None else p0
    if lam < 1:
        raise UsageError("--lambda must be >= 1")
    if not 1 <= args.mu <= lam:
        raise UsageError(f"--mu={args.mu} must be in [1, --lambda={lam}]")
    if not 0.0 <= args.alpha <= 1.0:
        raise UsageError(f"--alpha={args.alpha} must be in [0, 1]")
    if not p_min <= p0 <= args.p_max:
        raise UsageError(f"--p0={p0} must lie in [--p-min={p_min}, --p-max={args.p_max}]")
    if not 0.0 <= p_min <= args.p_max <= 1.0:
        raise UsageError(f"need 0 <= --p-min={p_min} <= --p-max={args.p_max} <= 1")
    if args.algorithm == "two_rate" and lam % 2:
        raise UsageError(f"--lambda={lam} must be even for two_rate")
    return Hyperparameters(
        lam=lam, p0=p0, mu=args.mu, alpha=args.alpha, p_min=p_min, p_max=args.p_max,
        variant=args.algorithm, center_update_enabled=not static,
    )


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".itea-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _summary_csv(summary: harness.CampaignSummary) -> str:
    d = summary.to_dict()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(harness.SUMMARY_FIELDS)
    w.writerow(["" if d[k] is None else d[k] for k in harness.SUMMARY_FIELDS])
    return buf.getvalue()


def _dispatch(args) -> str:
    if args.subcommand == "static":
        hp = _hyperparameters(args, static=True)
        problem = make_problem(args.function, args.n)
        weight = args.initial_weight if args.initial_weight is not None else args.n // 2
        if not 0 <= weight <= args.n:
            raise UsageError(f"--initial-weight={weight} must be in [0, --n={args.n}]")
        if args.algorithm in ("opl", "two_rate"):
            raise UsageError("--algorithm must be an it-EA variant for static search")
        if args.iterations < 0:
            raise UsageError("--iterations must be >= 0")
        trace = harness.static_search(hp, problem, weight, args.iterations, args.seed)
        if args.format == "json":
            out = {"metadata": trace.metadata, "seed": trace.seed,
                   "columns": list(harness.STATIC_COLUMNS), "rows": trace.rows}
            return json.dumps(harness._json_safe(out), indent=2) + "\n"
        return harness.static_csv(trace)

    hp = _hyperparameters(args)
    problem = make_problem(args.function, args.n)
    budget = args.budget if args.budget is not None else harness.default_budget(args.function, args.n)
    if budget < 1:
        raise UsageError("--budget must be >= 1")

    if args.subcommand == "run":
        if args.trace_every < 0:
            raise UsageError("--trace-every must be >= 0")
        record = run(hp, problem, budget, args.seed, trace_every=args.trace_every)
        return harness.trace_csv(record) if args.format == "csv" else harness.record_json(record)

    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    summary = harness.campaign(hp, problem, args.runs, budget, args.seed, jobs=args.jobs)
    return harness.summary_json(summary) if args.format == "json" else _summary_csv(summary)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _dispatch(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"itea {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    try:
        _write(text, args.out)
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
