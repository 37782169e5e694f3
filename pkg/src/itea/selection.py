"""Rank-based selection with ties.

The top ``mu`` of ``lam`` sampled individuals receive weight ``lam / mu``.
When the fitness class of the ``mu``-th individual straddles the cutoff,
the class shares the remaining weight evenly: every member gets
``c * lam / mu`` with ``c = (mu - r_gt) / (r_ge - r_gt)``.

All weights are kept as exact rationals (integer numerator and denominator).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bitvec import BitVector, hamming_weight

MAX_ORACLE_DIMENSION = 20


@dataclass(frozen=True)
class SelectionScheme:
    lam: int
    mu: int

    def __post_init__(self):
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if not 1 <= self.mu <= self.lam:
            raise ValueError(f"mu must be in [1, {self.lam}], got {self.mu}")

    @property
    def q0(self) -> Fraction:
        return Fraction(self.mu, self.lam)


@dataclass(frozen=True)
class RankedPopulation:
    """Sorted population with tie classes resolved into K1/K2.

    ``sigma[j]`` is the index of the j-th best individual (0-based, stable).
    ``r_gt[k]`` / ``r_ge[k]`` count the individuals strictly better than /
    at least as good as ``k`` (``k`` included in the latter).
    ``k1`` holds the fully weighted indices, ``k2`` the tied class across the
    cutoff (possibly empty); the complement gets weight 0.
    ``c = c_num / c_den`` with ``c_den = len(k2)``; ``c = 0`` when ``k2`` is empty.
    """

    sigma: np.ndarray
    r_gt: np.ndarray
    r_ge: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    c_num: int
    c_den: int

    @property
    def c(self) -> Fraction:
        return Fraction(self.c_num, self.c_den) if self.c_den else Fraction(0)


def rank(fitness, scheme: SelectionScheme) -> RankedPopulation:
    f = np.asarray(fitness)
    lam, mu = scheme.lam, scheme.mu
    if f.ndim != 1 or f.size != lam:
        raise ValueError(f"expected {lam} fitness values, got shape {f.shape}")

    sigma = np.argsort(-f, kind="stable")
    ascending = f[sigma[::-1]]
    r_gt = lam - np.searchsorted(ascending, f, side="right")
    r_ge = lam - np.searchsorted(ascending, f, side="left")

    top = sigma[:mu]
    if mu < lam and f[sigma[mu - 1]] == f[sigma[mu]]:
        tied = f[sigma[mu - 1]]
        k2 = sigma[f[sigma] == tied]
        k1 = top[f[top] != tied]
        c_num = mu - int(r_gt[k2[0]])
        c_den = int(k2.size)
    else:
        k2 = sigma[:0]
        k1 = top
        c_num, c_den = 0, 0
    return RankedPopulation(sigma, r_gt, r_ge, k1, k2, c_num, c_den)


def weights(ranked: RankedPopulation, scheme: SelectionScheme) -> list[Fraction]:
    """Empirical selection weights; they sum to ``lam`` exactly."""
    full = Fraction(scheme.lam, scheme.mu)
    out = [Fraction(0)] * scheme.lam
    for k in ranked.k1.tolist():
        out[k] = full
    if ranked.c_den:
        partial = ranked.c * full
        for k in ranked.k2.tolist():
            out[k] = partial
    return out


def step_weight_mean(q_gt, q_ge, q0):
    """Mean of ``w(q) = 1{q <= q0} / q0`` over ``[q_gt, q_ge]``."""
    return (min(q0, q_ge) - min(q0, q_gt)) / (q0 * (q_ge - q_gt))


def _enumerate(n: int):
    return [BitVector(bits) for bits in itertools.product((0, 1), repeat=n)]


def improvement_probabilities(u: BitVector, g, p, n: int | None = None):
    """``(P(g(V) > g(u)), P(g(V) >= g(u)))`` for ``V`` from standard bit mutation.

    Computed by enumerating all ``2**n`` vectors; ``p`` may be a
    :class:`~fractions.Fraction` for exact results.
    """
    n = u.n if n is None else n
    if n > MAX_ORACLE_DIMENSION:
        raise ValueError(f"enumeration limited to n <= {MAX_ORACLE_DIMENSION}, got {n}")
    if not 0 < p < 1:
        raise ValueError(f"rate must be in (0, 1), got {p}")
    gu = g(u)
    q_gt = q_ge = 0
    for v in _enumerate(n):
        k = hamming_weight(v)
        mass = p**k * (1 - p) ** (n - k)
        gv = g(v)
        if gv > gu:
            q_gt += mass
        if gv >= gu:
            q_ge += mass
    return q_gt, q_ge


def exact_weight_oracle(u: BitVector, g, p, scheme: SelectionScheme):
    """Exact selection weight of mask ``u`` under the step weight function.

    ``g`` is the center-translated fitness, ``g(v) = f(center xor v)``.
    """
    q_gt, q_ge = improvement_probabilities(u, g, p)
    return step_weight_mean(q_gt, q_ge, scheme.q0)


def exact_weighted_frequency(g, n: int, p, scheme: SelectionScheme):
    """``E[W(u) * |u| / n]`` under standard bit mutation, by enumeration."""
    if n > MAX_ORACLE_DIMENSION:
        raise ValueError(f"enumeration limited to n <= {MAX_ORACLE_DIMENSION}, got {n}")
    vs = _enumerate(n)
    ks = [hamming_weight(v) for v in vs]
    gs = [g(v) for v in vs]
    masses = [p**k * (1 - p) ** (n - k) for k in ks]
    q0 = scheme.q0
    total = 0
    for gu, ku, mu_mass in zip(gs, ks, masses):
        q_gt = sum(m for gv, m in zip(gs, masses) if gv > gu)
        q_ge = sum(m for gv, m in zip(gs, masses) if gv >= gu)
        total += mu_mass * step_weight_mean(q_gt, q_ge, q0) * Fraction(ku, n)
    return total
