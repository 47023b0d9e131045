"""Distortion measures between equal-length symbol blocks.

Every registered measure must satisfy ``d(x[:i]; y[:i]) + d(x[i:]; y[i:]) >=
d(x; y)`` and ``d(x; x) = 0``. Additive measures (a sum of per-symbol costs)
meet the first with equality and get a vectorised pairwise path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

# cap on K * M * L elements materialised per pairwise chunk
_CHUNK_ELEMENTS = 1 << 22


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def absolute(x: Sequence[int], y: Sequence[int]) -> int:
    """Sum of absolute differences of symbol indices."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(abs(a - b) for a, b in zip(x, y))


def _hamming_pairwise(C, B):
    return (C[:, None, :] != B[None, :, :]).sum(axis=2)


def _absolute_pairwise(C, B):
    return np.abs(C[:, None, :] - B[None, :, :]).sum(axis=2)


@dataclass(frozen=True)
class DistortionMeasure:
    name: str
    evaluate: Callable[[Sequence[int], Sequence[int]], "int | Fraction"]
    additive: bool = False
    integer_valued: bool = False
    vectorized: Callable | None = None

    def __call__(self, x, y):
        if len(x) != len(y):
            raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
        return self.evaluate(x, y)

    def within(self, centers: np.ndarray, blocks: np.ndarray, budget: Fraction):
        """Boolean matrix ``d(centers[i], blocks[j]) <= budget``, chunked."""
        K, M = len(centers), len(blocks)
        out = np.zeros((K, M), dtype=bool)
        if K == 0 or M == 0:
            return out
        if self.vectorized is not None and self.integer_valued:
            # integer distances: d <= budget  <=>  d <= floor(budget), exactly
            limit = budget.numerator // budget.denominator
            L = max(1, centers.shape[1])
            step = max(1, _CHUNK_ELEMENTS // (M * L))
            for lo in range(0, K, step):
                out[lo:lo + step] = self.vectorized(centers[lo:lo + step], blocks) <= limit
            return out
        for i, c in enumerate(centers.tolist()):
            for j, b in enumerate(blocks.tolist()):
                out[i, j] = Fraction(self.evaluate(c, b)) <= budget
        return out


HAMMING = DistortionMeasure("hamming", hamming, additive=True, integer_valued=True,
                            vectorized=_hamming_pairwise)
ABSOLUTE = DistortionMeasure("absolute", absolute, additive=True, integer_valued=True,
                             vectorized=_absolute_pairwise)

MEASURES = {m.name: m for m in (HAMMING, ABSOLUTE)}


def get_measure(measure) -> DistortionMeasure:
    if isinstance(measure, DistortionMeasure):
        return measure
    try:
        return MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown distortion measure {measure!r}; "
                         f"known: {sorted(MEASURES)}") from None
