"""Constituents and validated index weight vectors.

Weights live on the probability simplex: nonnegative, summing to one
within ``SUM_TOL``. Zero-weight constituents are kept in place rather
than dropped, so positions stay aligned across transforms and
before/after comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateIdentifierError,
    EmptyUniverseError,
    NegativeEntryError,
    NegativeMarketCapError,
    ZeroAggregateError,
)

SUM_TOL = 1e-12


@dataclass(frozen=True)
class Constituent:
    """A named index member with its market-capitalization inputs.

    ``market_cap`` can be supplied directly or left as ``None``, in which
    case it is computed as ``price * shares_outstanding`` (both must then
    be present and positive).
    """

    identifier: str
    market_cap: float | None = None
    price: float | None = None
    shares_outstanding: float | None = None

    def __post_init__(self) -> None:
        if not self.identifier:
            raise ValueError("constituent identifier must be nonempty")
        if self.market_cap is None:
            if self.price is None or self.shares_outstanding is None:
                raise ValueError(
                    f"{self.identifier}: supply market_cap or both price "
                    "and shares_outstanding"
                )
        if self.price is not None and not self.price > 0:
            raise ValueError(f"{self.identifier}: price must be positive")
        if self.shares_outstanding is not None and not self.shares_outstanding > 0:
            raise ValueError(
                f"{self.identifier}: shares_outstanding must be positive"
            )
        cap = (
            float(self.market_cap)
            if self.market_cap is not None
            else float(self.price) * float(self.shares_outstanding)
        )
        if not np.isfinite(cap):
            raise ValueError(f"{self.identifier}: market_cap must be finite")
        if cap < 0:
            raise NegativeMarketCapError(
                f"{self.identifier}: market_cap {cap!r} is negative"
            )
        object.__setattr__(self, "market_cap", cap)


def _check_unique(identifiers: Sequence[str]) -> None:
    if len(set(identifiers)) == len(identifiers):
        return
    seen: set[str] = set()
    dupes: set[str] = set()
    for ident in identifiers:
        if ident in seen:
            dupes.add(ident)
        seen.add(ident)
    raise DuplicateIdentifierError(f"duplicate identifiers: {sorted(dupes)}")


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative weights summing to one, keyed by identifier.

    Entry order is stable (input order is preserved) and identifiers are
    unique. The weights array is read-only once constructed.
    """

    identifiers: tuple[str, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.identifiers)
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or len(ids) != w.size:
            raise ValueError("identifiers and weights must match in length")
        if w.size == 0:
            raise EmptyUniverseError("weight vector has no entries")
        _check_unique(ids)
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        total = float(w.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "identifiers", ids)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        """Number of entries."""
        return len(self.identifiers)

    @property
    def entries(self) -> list[tuple[str, float]]:
        """(identifier, weight) pairs in stable order."""
        return list(zip(self.identifiers, self.weights.tolist()))

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)

    def __len__(self) -> int:
        return self.n


def normalize(raw: Iterable[float] | np.ndarray) -> np.ndarray:
    """Scale nonnegative values so they sum to one.

    Raises ``NegativeEntryError`` on any negative input and
    ``ZeroAggregateError`` when the total is zero. Idempotent up to
    floating-point roundoff.
    """
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional array of values")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    if np.any(arr < 0.0):
        idx = int(np.argmin(arr))
        raise NegativeEntryError(f"entry {idx} is negative: {arr[idx]!r}")
    total = float(arr.sum())
    if total <= 0.0:
        raise ZeroAggregateError("entries sum to zero; nothing to normalize")
    return arr / total


def weights_from_market_caps(universe: Sequence[Constituent]) -> WeightVector:
    """Market-cap weights: each constituent's share of the aggregate cap.

    Zero-cap constituents are kept with weight zero so positions stay
    index-aligned. Order matches the input order.
    """
    if not universe:
        raise EmptyUniverseError("universe is empty")
    ids = tuple(c.identifier for c in universe)
    _check_unique(ids)
    caps = np.array([c.market_cap for c in universe], dtype=float)
    if np.any(caps < 0.0):
        idx = int(np.argmin(caps))
        raise NegativeMarketCapError(
            f"{ids[idx]}: market_cap {caps[idx]!r} is negative"
        )
    if not np.any(caps > 0.0):
        raise ZeroAggregateError("all market caps are zero")
    return WeightVector(ids, normalize(caps))
