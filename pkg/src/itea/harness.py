"""Seeded runs, fixed-target campaigns, static searches and their output formats."""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .algorithms import TRACE_COLUMNS, Hyperparameters, RunRecord, init_state, run, run_metadata, step_it_ea
from .bitvec import sample_fixed_weight
from .problems import Problem

__all__ = [
    "RunRecord", "CampaignSummary", "StaticTrace", "campaign", "run_seed", "static_search",
    "default_budget", "trace_csv", "summary_json", "SUMMARY_FIELDS", "TRACE_COLUMNS",
]

SUMMARY_FIELDS = (
    "algorithm", "function", "n", "lambda", "mu", "alpha", "p0", "p_min", "p_max",
    "runs", "success_count", "mean_runtime", "stddev_runtime", "seed",
)
STATIC_COLUMNS = ("iteration", "p", "theta", "p_hat")


def default_budget(function: str, n: int) -> int:
    """``10**4 * n`` on OneMax, ``10**2 * n**2`` on LeadingOnes."""
    if function == "leadingones":
        return 100 * n * n
    return 10_000 * n


def run_seed(master_seed: int, index: int) -> int:
    """Seed of run ``index``; independent of how many runs the campaign has."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class CampaignSummary:
    runs: int
    success_count: int
    mean_runtime: float | None
    stddev_runtime: float
    # False when fewer than two successful runs: stddev_runtime is then 0
    stddev_defined: bool
    seed: int
    metadata: dict
    per_run: list[dict] = field(default_factory=list)

    @property
    def degraded(self) -> bool:
        return self.success_count < self.runs

    def to_dict(self) -> dict:
        out = {k: self.metadata[k] for k in SUMMARY_FIELDS[:9]}
        out.update(
            runs=self.runs,
            success_count=self.success_count,
            mean_runtime=self.mean_runtime,
            stddev_runtime=self.stddev_runtime,
            seed=self.seed,
            stddev_defined=self.stddev_defined,
            degraded=self.degraded,
            budget=self.metadata["budget"],
            metadata=self.metadata,
            per_run=self.per_run,
        )
        return out


def _digest(record: RunRecord) -> dict:
    return {
        "seed": record.seed,
        "success": record.success,
        "runtime": record.runtime,
        "evaluations": record.evaluations,
    }


def _one_run(args) -> dict:
    hp, problem, budget, seed = args
    return _digest(run(hp, problem, budget, seed))


def campaign(
    hp: Hyperparameters,
    problem: Problem,
    runs: int,
    budget: int | None = None,
    master_seed: int = 0,
    jobs: int = 1,
) -> CampaignSummary:
    """Run ``runs`` independent seeded runs and aggregate their runtimes.

    Results are ordered by run index, so any ``jobs`` gives the same summary.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if budget is None:
        budget = default_budget(problem.name, problem.n)
    tasks = [(hp, problem, budget, run_seed(master_seed, i)) for i in range(runs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            digests = list(pool.map(_one_run, tasks, chunksize=max(1, runs // (4 * jobs))))
    else:
        digests = [_one_run(t) for t in tasks]

    runtimes = [d["runtime"] for d in digests if d["success"]]
    mean = statistics.fmean(runtimes) if runtimes else None
    defined = len(runtimes) >= 2
    return CampaignSummary(
        runs=runs,
        success_count=len(runtimes),
        mean_runtime=mean,
        stddev_runtime=statistics.stdev(runtimes) if defined else 0.0,
        stddev_defined=defined,
        seed=master_seed,
        metadata=run_metadata(hp, problem, budget),
        per_run=digests,
    )


@dataclass
class StaticTrace:
    """Rate trajectory of a static search (center frozen)."""

    rows: list[tuple]
    center_weight: int
    seed: int
    metadata: dict

    @property
    def theta(self) -> np.ndarray:
        return np.array([r[2] for r in self.rows])

    @property
    def p(self) -> np.ndarray:
        return np.array([r[1] for r in self.rows])

    @property
    def p_hat(self) -> np.ndarray:
        return np.array([np.nan if r[3] is None else r[3] for r in self.rows])


def static_search(
    hp: Hyperparameters, problem: Problem, initial_weight: int, iterations: int, seed: int
) -> StaticTrace:
    """IGO rate updates only, around a fixed random center of the given weight.

    Row 0 is the initial state; row ``t`` holds ``(t, p, theta, p_hat)``
    after ``t`` updates.
    """
    if hp.center_update_enabled:
        hp = replace(hp, center_update_enabled=False)
    if hp.variant not in ("it", "it1", "eit", "neit"):
        raise ValueError(f"static search needs an it-EA variant, got {hp.variant!r}")
    rng = np.random.default_rng(seed)
    center = sample_fixed_weight(problem.n, initial_weight, rng)
    state = init_state(hp, problem, rng, center=center)
    rows = [(0, state.rate.p, state.rate.theta, None)]
    for _ in range(iterations):
        state = step_it_ea(state, hp, problem, rng)
        rows.append((state.iteration, state.rate.p, state.rate.theta, state.p_hat))
    meta = run_metadata(hp, problem, budget=None)
    meta.update(initial_weight=initial_weight, iterations=iterations)
    return StaticTrace(rows, initial_weight, seed, meta)


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def trace_csv(record: RunRecord) -> str:
    """``iteration,evaluations,best_fitness,p,theta`` rows with a header."""
    return _csv(TRACE_COLUMNS, record.trace)


def static_csv(trace: StaticTrace) -> str:
    return _csv(STATIC_COLUMNS, trace.rows)


def _json_safe(obj):
    if isinstance(obj, float) and not np.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def summary_json(summary: CampaignSummary) -> str:
    return json.dumps(_json_safe(summary.to_dict()), indent=2) + "\n"


def record_json(record: RunRecord) -> str:
    out = {
        "success": record.success,
        "runtime": record.runtime,
        "evaluations": record.evaluations,
        "iterations": record.iterations,
        "seed": record.seed,
        "metadata": record.metadata,
        "trace_columns": list(TRACE_COLUMNS),
        "trace": record.trace,
    }
    return json.dumps(_json_safe(out), indent=2) + "\n"
