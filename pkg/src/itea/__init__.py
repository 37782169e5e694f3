"""Information-theoretic evolutionary algorithms on bit vectors."""

from .algorithms import VARIANTS, AlgorithmState, Hyperparameters, RunRecord, run
from .bitvec import BitVector, hamming_weight, xor
from .problems import PROBLEMS, LeadingOnes, OneMax, Problem, make_problem

__all__ = [
    "VARIANTS", "AlgorithmState", "Hyperparameters", "RunRecord", "run",
    "BitVector", "hamming_weight", "xor",
    "PROBLEMS", "LeadingOnes", "OneMax", "Problem", "make_problem",
]
__version__ = "0.1.0"
