"""Optimizers on bit vectors sharing one step/run interface.

Variants:

``it``
    IGO rate update + ML (majority) center update.
``it1``
    IGO rate update + local ML update (flips at most one bit).
``eit``
    IGO rate update + elitist ``(1 + lambda)`` replacement.
``neit``
    IGO rate update + comma ``(1, lambda)`` replacement.
``opl``
    ``(1 + lambda)`` EA with fixed rate ``p0``.
``two_rate``
    2-rate ``(1 + lambda)`` EA: half the offspring at rate ``r / (2n)``, half
    at ``2r / n``, with ``r`` following the winning half.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bitvec import BitVector, sample_uniform
from .model import RateState, sample_flips
from .problems import Problem
from .selection import SelectionScheme, rank
from .update import (
    SampledGeneration,
    best_offspring_index,
    igo_estimate,
    igo_update,
    local_ml_update,
    ml_update,
)

VARIANTS = ("it", "it1", "eit", "neit", "opl", "two_rate")

# 2-rate EA strength bounds: r in [TWO_RATE_R_LO, n / TWO_RATE_R_HI_DIVISOR]
TWO_RATE_R_LO = 0.5
TWO_RATE_R_HI_DIVISOR = 4


@dataclass(frozen=True)
class Hyperparameters:
    lam: int
    p0: float
    mu: int = 1
    alpha: float = 0.2
    p_min: float | None = None
    p_max: float = 0.5
    variant: str = "eit"
    center_update_enabled: bool = True

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown algorithm {self.variant!r}; choose from {VARIANTS}")
        if self.p_min is None:
            object.__setattr__(self, "p_min", self.p0)
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if not 1 <= self.mu <= self.lam:
            raise ValueError(f"mu={self.mu} must be in [1, lambda={self.lam}]")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha={self.alpha} outside [0, 1]")
        if not 0.0 <= self.p_min <= self.p0 <= self.p_max <= 1.0:
            raise ValueError(
                f"need 0 <= p_min <= p0 <= p_max <= 1, got p_min={self.p_min}, p0={self.p0}, p_max={self.p_max}"
            )
        if self.variant == "two_rate" and self.lam % 2:
            raise ValueError(f"two_rate needs an even lambda, got {self.lam}")

    @classmethod
    def defaults(cls, n: int, variant: str = "eit", **overrides) -> Hyperparameters:
        """Runtime-study defaults: ``lam = n // 10``, ``p0 = p_min = 1/n``, ``alpha = 0.2``."""
        p0 = overrides.pop("p0", 1.0 / n)
        params = dict(lam=max(1, n // 10), p0=p0, mu=1, alpha=0.2, p_min=p0, p_max=0.5)
        params.update(overrides)
        return cls(variant=variant, **params)

    @functools.cached_property
    def scheme(self) -> SelectionScheme:
        return SelectionScheme(self.lam, self.mu)


@dataclass(frozen=True)
class AlgorithmState:
    center: BitVector
    f_center: float
    rate: RateState
    iteration: int = 0
    evaluations: int = 1
    best_fitness: float = -math.inf
    # evaluation count at which best_fitness was first reached
    best_at: int = 1
    p_hat: float | None = None


@dataclass
class RunRecord:
    success: bool
    runtime: int | None
    evaluations: int
    iterations: int
    seed: int
    trace: list[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)


TRACE_COLUMNS = ("iteration", "evaluations", "best_fitness", "p", "theta")


def two_rate_bounds(n: int) -> tuple[float, float]:
    """Rate bounds ``(r_lo / n, r_hi / n)`` for the 2-rate EA."""
    return TWO_RATE_R_LO / n, 1.0 / TWO_RATE_R_HI_DIVISOR


def init_state(hp: Hyperparameters, problem: Problem, rng, center: BitVector | None = None) -> AlgorithmState:
    """Uniform random center (unless given), one evaluation, ``p = p0``."""
    if center is None:
        center = sample_uniform(problem.n, rng)
    f = problem.evaluate(center)
    if hp.variant == "two_rate":
        lo, hi = two_rate_bounds(problem.n)
        if not lo <= hp.p0 <= hi:
            raise ValueError(f"two_rate needs p0 in [{lo}, {hi}], got {hp.p0}")
        rate = RateState(hp.p0, lo, hi)
    else:
        rate = RateState(hp.p0, hp.p_min, hp.p_max)
    return AlgorithmState(center, f, rate, best_fitness=f, best_at=1)


def _evaluate(state: AlgorithmState, problem: Problem, indptr, indices):
    """Evaluate a population; returns fitness and the updated (evaluations, best, best_at)."""
    fitness = problem.evaluate_offspring(state.center.bits, state.f_center, indptr, indices)
    evals = state.evaluations
    best, best_at = state.best_fitness, state.best_at
    k = int(np.argmax(fitness))
    if fitness[k] > best:
        best, best_at = fitness[k].item(), evals + k + 1
    return fitness, evals + fitness.size, best, best_at


def _sample(state, hp, problem, p, rng):
    indptr, indices = sample_flips(hp.lam, problem.n, p, rng)
    fitness, evals, best, best_at = _evaluate(state, problem, indptr, indices)
    gen = SampledGeneration(state.center.bits, indptr, indices, fitness, rank(fitness, hp.scheme))
    return gen, evals, best, best_at


def step_it_ea(state: AlgorithmState, hp: Hyperparameters, problem: Problem, rng) -> AlgorithmState:
    """One iteration of the it-EA family (variants it, it1, eit, neit)."""
    p = state.rate.p
    gen, evals, best, best_at = _sample(state, hp, problem, p, rng)
    center, f_center = state.center, state.f_center

    if hp.center_update_enabled:
        if hp.variant in ("it", "it1"):
            if hp.variant == "it":
                center = ml_update(gen, hp.scheme, p, rng)
            else:
                center = local_ml_update(gen, hp.scheme, state.center, p, rng)
            f_center = problem.evaluate(center)
            evals += 1
            if f_center > best:
                best, best_at = f_center, evals
        else:
            k = best_offspring_index(gen)
            if hp.variant == "neit" or gen.fitness[k] >= f_center:
                center, f_center = gen.offspring(k), gen.fitness[k].item()

    p_hat = igo_estimate(gen, hp.scheme)
    rate = state.rate.with_rate(igo_update(state.rate, p_hat, hp.alpha))
    return AlgorithmState(center, f_center, rate, state.iteration + 1, evals, best, best_at, p_hat)


def step_opl_ea(state: AlgorithmState, hp: Hyperparameters, problem: Problem, rng) -> AlgorithmState:
    """``(1 + lambda)`` EA: fixed rate, elitist replacement accepting ties."""
    indptr, indices = sample_flips(hp.lam, problem.n, state.rate.p, rng)
    fitness, evals, best, best_at = _evaluate(state, problem, indptr, indices)
    center, f_center = state.center, state.f_center
    k = int(np.argmax(fitness))
    if fitness[k] >= f_center:
        gen = SampledGeneration(state.center.bits, indptr, indices, fitness, None)
        center, f_center = gen.offspring(k), fitness[k].item()
    return dataclasses.replace(
        state, center=center, f_center=f_center, iteration=state.iteration + 1,
        evaluations=evals, best_fitness=best, best_at=best_at,
    )


def step_two_rate_ea(state: AlgorithmState, hp: Hyperparameters, problem: Problem, rng) -> AlgorithmState:
    """2-rate ``(1 + lambda)`` EA.

    The current rate ``p = r / n`` is stored in ``state.rate``. Offspring
    ``0 .. lam/2 - 1`` use ``p / 2``, the rest ``2p``. The winner is a
    uniformly chosen best offspring. Then with probability 1/2 the rate moves
    to the winner's half, otherwise to ``p / 2`` or ``2p`` at random, and is
    clamped to the bounds of :func:`two_rate_bounds`.
    """
    if hp.lam < 2 or hp.lam % 2:
        raise ValueError(f"two_rate needs an even lambda >= 2, got {hp.lam}")
    n, half = problem.n, hp.lam // 2
    p = state.rate.p
    p_low, p_high = p / 2, min(1.0, 2 * p)
    ptr_a, idx_a = sample_flips(half, n, p_low, rng)
    ptr_b, idx_b = sample_flips(half, n, p_high, rng)
    indptr = np.concatenate([ptr_a, ptr_b[1:] + idx_a.size])
    indices = np.concatenate([idx_a, idx_b])
    fitness, evals, best, best_at = _evaluate(state, problem, indptr, indices)

    top = np.flatnonzero(fitness == fitness.max())
    winner = int(top[0]) if top.size == 1 else int(top[rng.integers(top.size)])
    center, f_center = state.center, state.f_center
    if fitness[winner] >= f_center:
        gen = SampledGeneration(state.center.bits, indptr, indices, fitness, None)
        center, f_center = gen.offspring(winner), fitness[winner].item()

    if rng.random() < 0.5:
        p_new = p_low if winner < half else p_high
    else:
        p_new = p_low if rng.random() < 0.5 else p_high
    rate = state.rate.with_rate(min(state.rate.p_max, max(state.rate.p_min, p_new)))
    return AlgorithmState(center, f_center, rate, state.iteration + 1, evals, best, best_at)


STEPPERS: dict[str, Callable] = {
    "it": step_it_ea,
    "it1": step_it_ea,
    "eit": step_it_ea,
    "neit": step_it_ea,
    "opl": step_opl_ea,
    "two_rate": step_two_rate_ea,
}


def run_metadata(hp: Hyperparameters, problem: Problem, budget: int) -> dict:
    meta = {
        "algorithm": hp.variant,
        "function": problem.name,
        "n": problem.n,
        "lambda": hp.lam,
        "mu": hp.mu,
        "alpha": hp.alpha,
        "p0": hp.p0,
        "p_min": hp.p_min,
        "p_max": hp.p_max,
        "budget": budget,
        "center_update_enabled": hp.center_update_enabled,
        # a step that crosses the budget completes its population
        "budget_accounting": "complete-population",
    }
    if hp.variant == "two_rate":
        lo, hi = two_rate_bounds(problem.n)
        meta.update(p_min=lo, p_max=hi, r_lo=TWO_RATE_R_LO, r_hi=problem.n / TWO_RATE_R_HI_DIVISOR)
    if hp.variant == "opl":
        meta.update(alpha=0.0, p_min=hp.p0, p_max=hp.p0)
    return meta


def _trace_row(state: AlgorithmState) -> tuple:
    return (state.iteration, state.evaluations, state.best_fitness, state.rate.p, state.rate.theta)


def run(hp: Hyperparameters, problem: Problem, budget: int, seed: int, trace_every: int = 0) -> RunRecord:
    """Iterate until the known maximum is evaluated or the budget is spent.

    ``runtime`` is the number of evaluations up to and including the first
    evaluation of a maximal point. ``trace_every = k > 0`` records every
    k-th iteration plus the initial and final states.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    step = STEPPERS[hp.variant]
    rng = np.random.default_rng(seed)
    state = init_state(hp, problem, rng)
    trace = [_trace_row(state)] if trace_every else []
    while state.best_fitness < problem.max_value and state.evaluations < budget:
        state = step(state, hp, problem, rng)
        if trace_every and state.iteration % trace_every == 0:
            trace.append(_trace_row(state))
    if trace_every and trace[-1][0] != state.iteration:
        trace.append(_trace_row(state))
    success = state.best_fitness >= problem.max_value and state.best_at <= budget
    return RunRecord(
        success=bool(success),
        runtime=int(state.best_at) if success else None,
        evaluations=int(state.evaluations),
        iterations=state.iteration,
        seed=seed,
        trace=trace,
        metadata=run_metadata(hp, problem, budget),
    )
