import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from itea.bitvec import hamming_weight
from itea.model import RateState, clamp_rate, expit, logit, sample_flips, sample_mask


def test_logit_values():
    assert logit(0.5) == 0.0
    assert abs(expit(logit(0.1)) - 0.1) < 1e-12
    assert logit(0.9) == pytest.approx(-logit(0.1), abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_logit_domain(p):
    with pytest.raises(ValueError):
        logit(p)


def test_expit_values():
    assert expit(0.0) == 0.5
    assert expit(800.0) == 1.0 and expit(-800.0) == 0.0
    assert abs(logit(expit(3.7)) - 3.7) < 1e-12


@given(st.floats(1e-9, 1 - 1e-9), st.floats(1e-9, 1 - 1e-9))
def test_logit_monotone(a, b):
    if a < b:
        assert logit(a) < logit(b)


def test_theta_sentinels():
    assert RateState(0.0, 0.0, 1.0).theta == -math.inf
    assert RateState(1.0, 0.0, 1.0).theta == math.inf


@pytest.mark.parametrize("p_new, expected", [(0.005, 0.01), (0.7, 0.5), (0.1, 0.1)])
def test_clamp_rate(p_new, expected):
    assert clamp_rate(RateState(0.1, 0.01, 0.5), p_new) == expected


def test_rate_state_validation():
    with pytest.raises(ValueError):
        RateState(0.1, 0.2, 0.5)
    with pytest.raises(ValueError):
        RateState(0.1, 0.5, 0.2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [0.1, 0.3, 0.5])
def test_mass_and_exponential_family(n, p):
    theta = logit(p)
    total = 0.0
    for u in itertools.product((0, 1), repeat=n):
        k = sum(u)
        mass = p**k * (1 - p) ** (n - k)
        total += mass
        assert abs(mass - math.exp(theta * k) / (1 + math.exp(theta)) ** n) < 1e-12
    assert abs(total - 1.0) < 1e-12


def test_sample_mask_degenerate(rng):
    assert hamming_weight(sample_mask(50, 0.0, rng)) == 0
    assert hamming_weight(sample_mask(50, 1.0, rng)) == 50


def test_sample_mask_binomial_mean(rng):
    reps, n, p = 10_000, 100, 0.05
    weights = np.array([hamming_weight(sample_mask(n, p, rng)) for _ in range(reps)])
    assert abs(weights.mean() - n * p) < 3 * math.sqrt(n * p * (1 - p) / reps)


def test_sample_flips_rows_sorted_and_in_range(rng):
    indptr, indices = sample_flips(50, 37, 0.2, rng)
    assert indptr[0] == 0 and indptr[-1] == indices.size and indptr.size == 51
    for k in range(50):
        row = indices[indptr[k]:indptr[k + 1]]
        assert np.all(np.diff(row) > 0)
        assert np.all((0 <= row) & (row < 37))


@pytest.mark.parametrize("p", [0.02, 0.3, 0.5, 0.9])
def test_sample_flips_per_bit_frequencies(rng, p):
    # Every position of every row is an independent Bernoulli(p) trial.
    rows, n = 4000, 7
    indptr, indices = sample_flips(rows, n, p, rng)
    dense = np.zeros((rows, n), dtype=np.int64)
    row_ids = np.repeat(np.arange(rows), np.diff(indptr))
    dense[row_ids, indices] = 1
    freq = dense.mean(axis=0)
    tol = 4 * math.sqrt(p * (1 - p) / rows)
    assert np.all(np.abs(freq - p) < tol)
    # weights binomial; first two bits uncorrelated
    w = dense.sum(axis=1)
    assert abs(w.var() - n * p * (1 - p)) < 0.1 * n * p * (1 - p) + 0.01
    assert abs(np.corrcoef(dense[:, 0], dense[:, 1])[0, 1]) < 0.08


def test_sample_flips_reproducible():
    a = sample_flips(10, 100, 0.03, np.random.default_rng(3))
    b = sample_flips(10, 100, 0.03, np.random.default_rng(3))
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
