"""Benchmark functions with known maxima."""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import _backend
from .bitvec import BitVector


def one_max(x: BitVector) -> int:
    return int(np.count_nonzero(x.bits))


def leading_ones(x: BitVector) -> int:
    """Length of the longest all-ones prefix."""
    zeros = np.flatnonzero(x.bits == 0)
    return int(zeros[0]) if zeros.size else x.n


class Problem:
    """A pseudo-Boolean function on ``{0,1}^n`` with a known maximum.

    The evaluation counter lives in the run, not here; problems are stateless.
    Subclasses may override :meth:`evaluate_offspring` with a faster batch
    evaluation as long as the values agree with :meth:`evaluate`.
    """

    def __init__(self, name: str, n: int, max_value, func: Callable[[BitVector], float]):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.name = name
        self.n = n
        self.max_value = max_value
        self._func = func

    def evaluate(self, x: BitVector):
        return self._func(x)

    def evaluate_offspring(self, center: np.ndarray, f_center, indptr, indices) -> np.ndarray:
        """Fitness of ``center xor mask_k`` for each CSR row ``k``."""
        rows = np.arange(indptr.size - 1)
        offspring = _backend.kernels.materialize(center, indptr, indices, rows)
        return np.array([self._func(BitVector._wrap(row)) for row in offspring])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, n={self.n})"


class OneMax(Problem):
    def __init__(self, n: int):
        super().__init__("onemax", n, n, one_max)

    def evaluate_offspring(self, center, f_center, indptr, indices):
        return _backend.kernels.onemax_offspring(center, int(f_center), indptr, indices)


class LeadingOnes(Problem):
    def __init__(self, n: int):
        super().__init__("leadingones", n, n, leading_ones)

    def evaluate_offspring(self, center, f_center, indptr, indices):
        return _backend.kernels.leadingones_offspring(center, indptr, indices)


PROBLEMS: dict[str, type[Problem]] = {
    "onemax": OneMax,
    "leadingones": LeadingOnes,
}


def make_problem(name: str, n: int) -> Problem:
    try:
        cls = PROBLEMS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(PROBLEMS)}") from None
    return cls(n)
