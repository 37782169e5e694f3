"""Center and rate updates.

* IGO rate update: ``p <- p + alpha * (p_hat - p)``, where ``p_hat`` is the
  weighted frequency of mutated bits among selected individuals.
* ML center update: per-bit weighted majority over selected offspring.
* Local ML update: flip at most one bit of the center.
* Elitist ``(1 + lambda)`` and comma ``(1, lambda)`` replacement.

Every comparison against 1/2 or ``mu`` is done in integers by
cross-multiplying with the denominator of ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .bitvec import BitVector
from .model import RateState, clamp_rate
from .selection import RankedPopulation, SelectionScheme, rank


@dataclass(frozen=True)
class SampledGeneration:
    """One population sampled around ``center``.

    Masks are stored sparsely: the flipped positions of mask ``k`` are
    ``indices[indptr[k]:indptr[k + 1]]``.
    """

    center: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    fitness: np.ndarray
    ranked: RankedPopulation

    @property
    def lam(self) -> int:
        return self.indptr.size - 1

    @property
    def n(self) -> int:
        return self.center.size

    @property
    def mask_weights(self) -> np.ndarray:
        return np.diff(self.indptr)

    def mask(self, k: int) -> BitVector:
        arr = np.zeros(self.n, dtype=np.uint8)
        arr[self.indices[self.indptr[k]:self.indptr[k + 1]]] = 1
        return BitVector._wrap(arr)

    def offspring_bits(self, rows) -> np.ndarray:
        return _backend.kernels.materialize(self.center, self.indptr, self.indices, rows)

    def offspring(self, k: int) -> BitVector:
        return BitVector._wrap(self.offspring_bits([k])[0])

    @property
    def masks(self) -> list[BitVector]:
        return [self.mask(k) for k in range(self.lam)]

    @property
    def offsprings(self) -> list[BitVector]:
        return [BitVector._wrap(row) for row in self.offspring_bits(np.arange(self.lam))]


def make_generation(center, indptr, indices, fitness, scheme: SelectionScheme) -> SampledGeneration:
    bits = center.bits if isinstance(center, BitVector) else center
    return SampledGeneration(bits, indptr, indices, np.asarray(fitness), rank(fitness, scheme))


def igo_estimate_exact(gen: SampledGeneration, scheme: SelectionScheme) -> Fraction:
    r = gen.ranked
    w = gen.mask_weights
    s1 = int(w[r.k1].sum())
    if r.c_den:
        s2 = int(w[r.k2].sum())
        return Fraction(r.c_den * s1 + r.c_num * s2, scheme.mu * gen.n * r.c_den)
    return Fraction(s1, scheme.mu * gen.n)


def igo_estimate(gen: SampledGeneration, scheme: SelectionScheme) -> float:
    """Weighted frequency of mutated bits in the selected individuals."""
    r = gen.ranked
    w = gen.mask_weights
    s1 = int(w[r.k1].sum())
    if r.c_den:
        s2 = int(w[r.k2].sum())
        return (r.c_den * s1 + r.c_num * s2) / (scheme.mu * gen.n * r.c_den)
    return s1 / (scheme.mu * gen.n)


def igo_update(state: RateState, p_hat: float, alpha: float) -> float:
    return clamp_rate(state, state.p + alpha * (p_hat - state.p))


def _rate_sign(p: float) -> int:
    # sign of log((1 - p) / p)
    return 1 if p < 0.5 else (-1 if p > 0.5 else 0)


def ml_update(gen: SampledGeneration, scheme: SelectionScheme, p: float, rng) -> BitVector:
    """Weighted majority vote of the selected offspring, bit by bit.

    Bit ``i`` becomes 1 when the weighted share of selected offspring with
    ``x_i = 1`` exceeds 1/2 (for ``p < 1/2``; reversed for ``p > 1/2``),
    0 when it is below, and a fair coin on exact ties. At ``p = 1/2`` every
    bit is a coin flip.
    """
    r = gen.ranked
    k = _backend.kernels
    x = gen.center.astype(np.int64)
    sign = 1 - 2 * x
    # column sums of selected offspring: |rows| * x_i + flips_i * (1 - 2 x_i)
    s1 = r.k1.size * x + sign * k.row_flip_counts(gen.indptr, gen.indices, r.k1, gen.n)
    if r.c_den:
        s2 = r.k2.size * x + sign * k.row_flip_counts(gen.indptr, gen.indices, r.k2, gen.n)
        margin = 2 * (r.c_den * s1 + r.c_num * s2) - scheme.mu * r.c_den
    else:
        margin = 2 * s1 - scheme.mu
    decision = margin * _rate_sign(p)
    out = (decision > 0).astype(np.uint8)
    ties = np.flatnonzero(decision == 0)
    if ties.size:
        out[ties] = rng.integers(0, 2, size=ties.size)
    return BitVector._wrap(out)


def local_ml_update(gen: SampledGeneration, scheme: SelectionScheme, center, p: float, rng) -> BitVector:
    """Incremental ML update: flip at most one bit of ``center``.

    With ``m_i`` the weighted share of selected masks flipping bit ``i``, the
    bit with the largest ``m_i`` is flipped if ``m_i > 1/2`` (``p < 1/2``), or
    the one with the smallest ``m_i`` if ``m_i < 1/2`` (``p > 1/2``). Ties
    among candidate bits are broken uniformly at random.
    """
    bits = center.bits if isinstance(center, BitVector) else np.asarray(center)
    sign = _rate_sign(p)
    if sign == 0:
        return BitVector._wrap(bits.copy())
    r = gen.ranked
    k = _backend.kernels
    # score_i = mu * m_i, scaled by c_den to stay integral
    score = k.row_flip_counts(gen.indptr, gen.indices, r.k1, gen.n)
    threshold = scheme.mu
    if r.c_den:
        score = r.c_den * score + r.c_num * k.row_flip_counts(gen.indptr, gen.indices, r.k2, gen.n)
        threshold *= r.c_den
    # m_i > 1/2  <=>  2 * score_i > threshold
    if sign > 0:
        best = score.max()
        if 2 * best <= threshold:
            return BitVector._wrap(bits.copy())
    else:
        best = score.min()
        if 2 * best >= threshold:
            return BitVector._wrap(bits.copy())
    candidates = np.flatnonzero(score == best)
    i = candidates[0] if candidates.size == 1 else candidates[rng.integers(candidates.size)]
    out = bits.copy()
    out[i] ^= 1
    return BitVector._wrap(out)


def best_offspring_index(gen: SampledGeneration) -> int:
    return int(gen.ranked.sigma[0])


def comma_replacement(gen: SampledGeneration) -> BitVector:
    return gen.offspring(best_offspring_index(gen))


def elitist_replacement(center, f_center, gen: SampledGeneration) -> BitVector:
    """Best offspring if it is at least as good as the center, else the center."""
    best = best_offspring_index(gen)
    if gen.fitness[best] >= f_center:
        return gen.offspring(best)
    return center if isinstance(center, BitVector) else BitVector(center)
