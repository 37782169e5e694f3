import numpy as np
import pytest

from itea import _backend
from itea.bitvec import BitVector
from itea.model import sample_flips
from itea.selection import SelectionScheme
from itea.update import make_generation

_acceptance_lines = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=sorted(_backend.BACKENDS))
def backend(request):
    with _backend.use(request.param):
        yield request.param


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""

    def _report(criterion: str, passed: bool, detail: str = ""):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def generation_from_masks(center, masks, fitness, lam=None, mu=1):
    """Build a SampledGeneration from explicit masks (strings or BitVectors)."""
    center = BitVector(center) if isinstance(center, str) else center
    masks = [BitVector(m) if isinstance(m, str) else m for m in masks]
    indptr = [0]
    indices = []
    for m in masks:
        pos = np.flatnonzero(m.bits)
        indices.extend(pos.tolist())
        indptr.append(len(indices))
    scheme = SelectionScheme(lam or len(masks), mu)
    gen = make_generation(
        center, np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64), np.asarray(fitness), scheme
    )
    return gen, scheme


def random_generation(rng, lam, n, p, mu=1, levels=None):
    """Random masks around a random center; fitness drawn with many ties when ``levels`` is small."""
    center = rng.integers(0, 2, size=n).astype(np.uint8)
    indptr, indices = sample_flips(lam, n, p, rng)
    if levels is None:
        fitness = rng.permutation(lam).astype(np.int64)
    else:
        fitness = rng.integers(0, levels, size=lam)
    scheme = SelectionScheme(lam, mu)
    return make_generation(center, indptr, indices, fitness, scheme), scheme
