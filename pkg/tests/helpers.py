"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np

from powerindex import WeightVector


def make_ids(n: int) -> tuple[str, ...]:
    return tuple(f"C{i:03d}" for i in range(n))


def wv(values, ids=None) -> WeightVector:
    """WeightVector over generated ticker-like identifiers."""
    arr = np.asarray(values, dtype=float)
    return WeightVector(make_ids(arr.size) if ids is None else tuple(ids), arr)


def random_simplex(
    rng: np.random.Generator,
    n: int,
    zeros: bool = False,
    ties: bool = False,
) -> np.ndarray:
    """Random positive weights normalized to one, optionally with tied
    values and zeroed entries (at least one entry stays positive)."""
    w = rng.uniform(0.05, 1.0, size=n)
    if ties and n >= 4:
        w[1] = w[0]
        w[n // 2] = w[n // 2 - 1]
    if zeros and n >= 3:
        k = max(1, n // 10)
        w[rng.choice(n - 1, size=min(k, n - 1), replace=False) + 1] = 0.0
    return w / w.sum()
