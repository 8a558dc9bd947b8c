"""Conversion between classical and idempotent measures.

The two kinds correspond through the logarithm on fixed finite support:
classical masses map to log-ratio weights ``ln(a_i) - max_j ln(a_j)``,
and idempotent weights map back through the softmax ``e^{w_i} / sum_j
e^{w_j}``.  On a fixed support the two maps invert each other, argmax
atoms correspond to weight-0 atoms, and both directions are continuous.

The correspondence is not natural for pushforwards: fiber sums and
fiber maxima disagree after conversion whenever a fiber merges atoms.
``naturality_gap`` quantifies that mismatch for a concrete map and
measure; it is 0 for injective maps.
"""

from __future__ import annotations

import math

from .functors import PointMap, pushforward_classical, pushforward_idempotent
from .measures import (
    ClassicalMeasure,
    IdempotentMeasure,
    Measure,
    normalize_idempotent,
)
from .semiring import BOTTOM, mp_exp

__all__ = [
    "naturality_gap",
    "roundtrip_gap",
    "to_classical",
    "to_idempotent",
]


def to_idempotent(mu: ClassicalMeasure) -> IdempotentMeasure:
    """Log-ratio conversion: atom ``i`` gets ``ln(a_i) - max_j ln(a_j)``.

    Atoms with mass 0 leave the support (weight BOTTOM).  The largest
    mass maps to weight exactly 0.
    """
    logs = [math.log(w) if w > 0.0 else BOTTOM for w in mu.weights]
    return normalize_idempotent(mu.space, logs)


def to_classical(mu: IdempotentMeasure) -> ClassicalMeasure:
    """Softmax conversion: atom ``i`` gets ``e^{w_i} / sum_j e^{w_j}``.

    Weights are at most 0, so every exponential is at most 1 and the
    denominator is at least 1; nothing can overflow.
    """
    masses = [mp_exp(w) for w in mu.weights]
    total = math.fsum(masses)
    return ClassicalMeasure(mu.space, tuple(m / total for m in masses))


def _weight_gap(a: IdempotentMeasure, b: IdempotentMeasure) -> float:
    if a.space != b.space:
        raise ValueError("space mismatch between measures")
    gap = 0.0
    for x, y in zip(a.weights, b.weights):
        if x is BOTTOM and y is BOTTOM:
            continue
        if x is BOTTOM or y is BOTTOM:
            return math.inf
        gap = max(gap, abs(x - y))
    return gap


def roundtrip_gap(mu: Measure) -> float:
    """Largest atomwise weight change after converting there and back.

    BOTTOM only matches BOTTOM; a support change reports ``inf``.
    Point measures of either kind round-trip with gap exactly 0.
    """
    if isinstance(mu, ClassicalMeasure):
        back = to_classical(to_idempotent(mu))
        return max(abs(x - y) for x, y in zip(mu.weights, back.weights))
    if isinstance(mu, IdempotentMeasure):
        return _weight_gap(mu, to_idempotent(to_classical(mu)))
    raise TypeError(f"not a measure: {mu!r}")


def naturality_gap(f: PointMap, mu: ClassicalMeasure) -> float:
    """How far conversion is from commuting with the pushforward along ``f``.

    Compares converting after pushing (classical transport, then
    log-ratio) against pushing after converting (log-ratio, then
    max-plus transport), atom by atom over the codomain; returns the
    largest absolute weight difference.  Injective maps give exactly 0;
    maps that merge atoms of unequal mass give a positive gap.
    """
    if mu.space != f.domain:
        raise ValueError("space mismatch: measure does not live on the map domain")
    via_classical = to_idempotent(pushforward_classical(f, mu))
    via_idempotent = pushforward_idempotent(f, to_idempotent(mu))
    return _weight_gap(via_classical, via_idempotent)
