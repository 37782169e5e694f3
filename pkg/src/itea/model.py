"""Standard bit mutation, the logit parametrization and rate bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitvec import BitVector


def logit(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise ValueError(f"logit undefined at p={p}")
    return math.log(p / (1.0 - p))


def expit(theta: float) -> float:
    if theta >= 0:
        return 1.0 / (1.0 + math.exp(-theta))
    z = math.exp(theta)
    return z / (1.0 + z)


@dataclass(frozen=True)
class RateState:
    """Mutation rate ``p`` with its clamp bounds and initial value."""

    p: float
    p_min: float = 0.0
    p_max: float = 1.0
    p0: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p_min <= self.p_max <= 1.0:
            raise ValueError(f"invalid rate bounds [{self.p_min}, {self.p_max}]")
        if self.p0 is None:
            object.__setattr__(self, "p0", self.p)
        if not self.p_min <= self.p0 <= self.p_max:
            raise ValueError(f"p0={self.p0} outside [{self.p_min}, {self.p_max}]")

    @property
    def theta(self) -> float:
        """``logit(p)``, with ``-inf``/``inf`` at the degenerate rates 0 and 1."""
        if self.p <= 0.0:
            return -math.inf
        if self.p >= 1.0:
            return math.inf
        return logit(self.p)

    def with_rate(self, p: float) -> RateState:
        return RateState(p, self.p_min, self.p_max, self.p0)


def clamp_rate(state: RateState, p_new: float) -> float:
    return min(state.p_max, max(state.p_min, p_new))


def sample_flips(rows: int, n: int, p: float, rng) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``rows`` independent masks from standard bit mutation.

    Returns a CSR pair ``(indptr, indices)``: the flipped positions of row
    ``k`` are ``indices[indptr[k]:indptr[k + 1]]``, sorted ascending.

    The rows are laid end to end as one stream of ``rows * n`` Bernoulli(p)
    trials and the gaps between successes are drawn as geometric variables,
    so the cost is proportional to the number of flips, not to ``rows * n``.
    Uniforms are drawn in blocks with ``rng.random``.
    """
    total = rows * n
    if p <= 0.0 or total == 0:
        return np.zeros(rows + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if p >= 1.0:
        indptr = np.arange(rows + 1, dtype=np.int64) * n
        return indptr, np.tile(np.arange(n, dtype=np.int64), rows)

    log_q = math.log1p(-p)
    mean = total * p
    block = int(mean + 5.0 * math.sqrt(mean) + 16)
    chunks = []
    offset = 0
    while True:
        u = rng.random(block)
        # 1 - u lies in (0, 1], so the log is finite.
        with np.errstate(over="ignore"):
            gaps = np.floor(np.log1p(-u) / log_q)
        np.minimum(gaps, total, out=gaps)
        pos = np.cumsum(gaps.astype(np.int64) + 1) - 1 + offset
        if pos[-1] >= total:
            chunks.append(pos[: np.searchsorted(pos, total)])
            break
        chunks.append(pos)
        offset = int(pos[-1]) + 1
    flat = chunks[0] if len(chunks) == 1 else np.concatenate(chunks)
    indptr = np.searchsorted(flat, np.arange(rows + 1, dtype=np.int64) * n)
    return indptr.astype(np.int64), flat % n


def sample_mask(n: int, p: float, rng) -> BitVector:
    """One mask from standard bit mutation: each bit is 1 with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"rate {p} outside [0, 1]")
    _, idx = sample_flips(1, n, p, rng)
    arr = np.zeros(n, dtype=np.uint8)
    arr[idx] = 1
    return BitVector._wrap(arr)
