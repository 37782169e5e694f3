"""Fixed-length bit vectors.

A :class:`BitVector` wraps a read-only ``uint8`` array of zeros and ones.
Index 0 is the leftmost character of the textual form.
"""

from __future__ import annotations

import functools

import numpy as np


@functools.total_ordering
class BitVector:
    """Immutable bit vector of dimension ``n``."""

    __slots__ = ("_bits",)

    def __init__(self, bits):
        if isinstance(bits, str):
            if not bits or set(bits) - {"0", "1"}:
                raise ValueError(f"not a bit string: {bits!r}")
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.array(bits, dtype=np.int64).ravel()
            if arr.size == 0:
                raise ValueError("bit vector must have positive dimension")
            if np.any((arr != 0) & (arr != 1)):
                raise ValueError("bit vector entries must be 0 or 1")
            arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> BitVector:
        # Trusted constructor: arr is a fresh uint8 array of 0/1 owned by the caller.
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._bits = arr
        return obj

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls._wrap(np.zeros(n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls._wrap(np.ones(n, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        """Read-only view of the underlying ``uint8`` array."""
        return self._bits

    @property
    def n(self) -> int:
        return self._bits.size

    def __len__(self) -> int:
        return self._bits.size

    def __getitem__(self, i: int) -> int:
        return int(self._bits[i])

    def __iter__(self):
        return iter(self._bits.tolist())

    def __str__(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._bits.size == other._bits.size and bool(np.array_equal(self._bits, other._bits))

    def __lt__(self, other: BitVector) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return str(self) < str(other)

    def __hash__(self) -> int:
        return hash((self._bits.size, self._bits.tobytes()))


def hamming_weight(v: BitVector) -> int:
    """Number of 1-bits of ``v``."""
    return int(np.count_nonzero(v.bits))


def xor(a: BitVector, b: BitVector) -> BitVector:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} != {b.n}")
    return BitVector._wrap(np.bitwise_xor(a.bits, b.bits))


def hamming_distance(a: BitVector, b: BitVector) -> int:
    return hamming_weight(xor(a, b))


def sample_uniform(n: int, rng) -> BitVector:
    """Each bit is 0 or 1 with probability 1/2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return BitVector._wrap(np.asarray(rng.integers(0, 2, size=n), dtype=np.uint8))


def sample_fixed_weight(n: int, w: int, rng) -> BitVector:
    """Uniformly random vector among those of Hamming weight ``w``."""
    if not 0 <= w <= n:
        raise ValueError(f"weight {w} out of range [0, {n}]")
    arr = np.zeros(n, dtype=np.uint8)
    arr[rng.choice(n, size=w, replace=False)] = 1
    return BitVector._wrap(arr)
