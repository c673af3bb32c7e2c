"""The three reweighting rules.

``power_rebalance`` raises every weight to an exponent p in [0, 1] and
renormalizes. It interpolates between the unchanged cap-weighted index
(p=1) and the equal-weighted index over positive entries (p=0), preserves
strict weight ordering, and never increases the maximum weight.

``linearized_power_rebalance`` applies the same power curve above a knot
and the chord of that curve through the origin below it, so genuinely
small weights keep their pairwise ratios instead of being inflated.

``cap_rebalance`` is the cap-and-redistribute procedure used as the
baseline for comparison: weights above a threshold are scaled to a fixed
aggregate and the remainder is spread proportionally over the rest. It
carries no ordering or max-weight guarantee, which the diagnostics module
exists to demonstrate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import AllWeightsZeroError, DegenerateComplementError
from .weights import WeightVector, normalize

DEFAULT_KNOT = 0.01
DEFAULT_CAP_THRESHOLD = 0.045
DEFAULT_CAP_TARGET = 0.40


@dataclass(frozen=True)
class PowerRule:
    """Raise each weight to ``p`` and renormalize."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p!r}")


@dataclass(frozen=True)
class LinearizedPowerRule:
    """Power curve above ``knot``, linear through the origin below it.

    The linear piece is the chord of x**p from the origin to the knot
    (slope knot**(p-1)), which keeps f(0) = 0 and f strictly increasing.
    """

    p: float
    knot: float = DEFAULT_KNOT

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p!r}")
        if not 0.0 < self.knot < 1.0:
            raise ValueError(f"knot must be in (0, 1), got {self.knot!r}")


@dataclass(frozen=True)
class CapRule:
    """Scale weights above ``threshold`` to ``target_aggregate`` in total,
    redistributing the remainder proportionally over the others."""

    threshold: float = DEFAULT_CAP_THRESHOLD
    target_aggregate: float = DEFAULT_CAP_TARGET

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold < self.target_aggregate < 1.0:
            raise ValueError(
                "need 0 < threshold < target_aggregate < 1, got "
                f"threshold={self.threshold!r}, "
                f"target_aggregate={self.target_aggregate!r}"
            )


RebalanceRule = Union[PowerRule, LinearizedPowerRule, CapRule]


def _powers(w: np.ndarray, p: float) -> np.ndarray:
    """Elementwise w**p with the convention 0**p := 0 for every p.

    Computed as exp(p * log(w)) on the positive entries; zeros
    short-circuit so no platform pow edge case at 0 is involved.
    """
    out = np.zeros_like(w)
    pos = w > 0.0
    out[pos] = np.exp(p * np.log(w[pos]))
    return out


def power_rebalance(mu: WeightVector, rule: PowerRule | float) -> WeightVector:
    """Reweight to mu_i**p / sum_j mu_j**p.

    Zero weights stay zero for every p, including p=0 where the positive
    entries become equal-weighted. Accepts a bare float as shorthand for
    ``PowerRule(p)``.
    """
    if not isinstance(rule, PowerRule):
        rule = PowerRule(float(rule))
    raised = _powers(mu.weights, rule.p)
    if not np.any(raised > 0.0):
        raise AllWeightsZeroError("no positive weight to renormalize over")
    return WeightVector(mu.identifiers, normalize(raised))


def linearized_power_rebalance(
    mu: WeightVector, rule: LinearizedPowerRule
) -> WeightVector:
    """Apply the knotted transform entrywise, then renormalize.

    Above the knot this matches ``power_rebalance`` exactly; below it,
    weights are scaled by the constant chord slope, so any two weights
    under the knot keep their ratio.
    """
    w = mu.weights
    out = _powers(w, rule.p)
    below = w < rule.knot
    if np.any(below):
        slope = float(np.exp((rule.p - 1.0) * np.log(rule.knot)))
        out[below] = slope * w[below]
    if not np.any(out > 0.0):
        raise AllWeightsZeroError("no positive weight to renormalize over")
    return WeightVector(mu.identifiers, normalize(out))


def cap_rebalance(mu: WeightVector, rule: CapRule | None = None) -> WeightVector:
    """Cap-and-redistribute: the group above ``threshold`` is rescaled to
    sum to ``target_aggregate``; everything else absorbs the remainder.

    Applies unconditionally whenever any weight exceeds the threshold,
    scaling the capped group up as well as down. Weights exactly at the
    threshold are not capped. Returns the input weights (renormalized)
    when nothing exceeds the threshold.
    """
    if rule is None:
        rule = CapRule()
    w = mu.weights
    capped = w > rule.threshold
    if not np.any(capped):
        return WeightVector(mu.identifiers, normalize(w))
    s = float(w[capped].sum())
    if not np.any(w[~capped] > 0.0) or (1.0 - s) <= 0.0:
        raise DegenerateComplementError(
            f"weights above threshold sum to {s!r}; no positive complement "
            "is left to absorb the redistributed mass"
        )
    out = np.empty_like(w)
    out[capped] = w[capped] * (rule.target_aggregate / s)
    out[~capped] = w[~capped] * ((1.0 - rule.target_aggregate) / (1.0 - s))
    return WeightVector(mu.identifiers, normalize(out))


def apply_rule(mu: WeightVector, rule: RebalanceRule) -> WeightVector:
    """Dispatch a tagged rule to its transform."""
    if isinstance(rule, PowerRule):
        return power_rebalance(mu, rule)
    if isinstance(rule, LinearizedPowerRule):
        return linearized_power_rebalance(mu, rule)
    if isinstance(rule, CapRule):
        return cap_rebalance(mu, rule)
    raise TypeError(f"unknown rebalance rule: {rule!r}")
