"""Deterministic compensated accumulation for the quadrature kernels.

Partial sums arrive in a fixed order (aperture rows or sample chunks in
row-major layout) and are combined with Kahan compensation, so results are
bit-reproducible for a given build regardless of how the work is batched.
"""

from __future__ import annotations

import numpy as np


class KahanAccumulator:
    """Kahan-compensated running sum of same-shaped complex arrays."""

    def __init__(self, shape, dtype=np.complex128):
        self._sum = np.zeros(shape, dtype=dtype)
        self._comp = np.zeros(shape, dtype=dtype)

    def add(self, term: np.ndarray) -> None:
        y = term - self._comp
        t = self._sum + y
        self._comp = (t - self._sum) - y
        self._sum = t

    @property
    def value(self) -> np.ndarray:
        return self._sum.copy()


def chunk_slices(n: int, size: int):
    """Fixed-order slices covering range(n) in blocks of ``size``."""
    for start in range(0, n, size):
        yield slice(start, min(start + size, n))
