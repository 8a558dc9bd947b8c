"""Finite spaces, test functions, and two kinds of probability measure.

A finite space is an ordered list of distinct string labels.  On top of
it live:

* ``TestFunction``: a real-valued function given by one finite value per
  point.
* ``IdempotentMeasure``: atom weights in the max-plus scalar domain,
  every weight at most 0 and the largest exactly 0.  Such a measure acts
  on a test function by ``max_i (weight_i + phi(x_i))``.
* ``ClassicalMeasure``: nonnegative atom masses summing to 1, acting by
  the usual expectation.

Weights are stored densely, one slot per point of the space, so that a
measure and a function on the same space always align index by index.
Points carrying ``BOTTOM`` (or mass 0 on the classical side) simply do
not belong to the support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .semiring import BOTTOM, MaxPlusValue, as_scalar, big_oplus, odot, oplus

__all__ = [
    "ClassicalMeasure",
    "FiniteSpace",
    "IdempotentMeasure",
    "TestFunction",
    "classical_measure",
    "dirac",
    "evaluate",
    "evaluate_classical",
    "evaluate_idempotent",
    "has_support_at_most",
    "maxplus_combine",
    "normalize_idempotent",
    "point_mass",
    "support",
]

# A classical mass vector must sum to 1 this tightly once constructed.
_SUM_TOL = 1e-12
# Looser gate for raw input: beyond this the caller must ask for rescaling.
_INPUT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class FiniteSpace:
    """An ordered finite set of points, each named by a distinct label.

    Parameters
    ----------
    points : tuple of str
        The labels, in a fixed order.  Order matters: measures and
        functions store their values aligned with it.
    """

    points: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.points)
        object.__setattr__(self, "points", labels)
        if not labels:
            raise ValueError("a space needs at least one point")
        lookup: dict[str, int] = {}
        for i, label in enumerate(labels):
            if not isinstance(label, str) or not label:
                raise ValueError(f"point labels must be nonempty strings: {label!r}")
            if label in lookup:
                raise ValueError(f"duplicate point label: {label!r}")
            lookup[label] = i
        object.__setattr__(self, "_index", lookup)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"point not in space: {label!r}") from None


@dataclass(frozen=True)
class TestFunction:
    """A real-valued function on a finite space, one finite value per point."""

    __test__ = False  # keep pytest from collecting this as a test class

    space: FiniteSpace
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) != len(self.space):
            raise ValueError("one value per point of the space is required")
        for v in values:
            if not math.isfinite(v):
                raise ValueError(f"test function values must be finite: {v!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, space: FiniteSpace, values: Mapping[str, float]) -> "TestFunction":
        _check_exact_keys(space, values, "function values")
        return cls(space, tuple(float(values[p]) for p in space.points))

    def __call__(self, label: str) -> float:
        return self.values[self.space.index(label)]

    @property
    def sup_norm(self) -> float:
        """The largest absolute value taken by the function."""
        return max(abs(v) for v in self.values)

    def shift(self, constant: float) -> "TestFunction":
        """Max-plus scaling: add ``constant`` to every value."""
        c = float(constant)
        return TestFunction(self.space, tuple(v + c for v in self.values))

    def pointwise_max(self, other: "TestFunction") -> "TestFunction":
        """Max-plus sum of two functions on the same space."""
        if self.space != other.space:
            raise ValueError("space mismatch between functions")
        return TestFunction(
            self.space,
            tuple(a if a >= b else b for a, b in zip(self.values, other.values)),
        )


@dataclass(frozen=True)
class IdempotentMeasure:
    """A max-plus probability measure on a finite space.

    Attributes
    ----------
    space : FiniteSpace
    weights : tuple
        One max-plus scalar per point; every weight is <= 0 and the
        largest finite weight is exactly 0.  ``BOTTOM`` marks points
        outside the support.
    """

    space: FiniteSpace
    weights: tuple[MaxPlusValue, ...]

    def __post_init__(self) -> None:
        weights = tuple(as_scalar(w) for w in self.weights)
        if len(weights) != len(self.space):
            raise ValueError("one weight per point of the space is required")
        peak = big_oplus(weights)
        if peak is BOTTOM:
            raise ValueError("empty support: every weight is BOTTOM")
        for w in weights:
            if w is not BOTTOM and w > 0.0:
                raise ValueError(f"idempotent weights must be <= 0, got {w!r}")
        if peak != 0.0:
            raise ValueError(f"idempotent weights must have maximum 0, got {peak!r}")
        object.__setattr__(self, "weights", weights)

    def weight(self, label: str) -> MaxPlusValue:
        return self.weights[self.space.index(label)]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(
            p for p, w in zip(self.space.points, self.weights) if w is not BOTTOM
        )


@dataclass(frozen=True)
class ClassicalMeasure:
    """An ordinary probability measure on a finite space.

    Attributes
    ----------
    space : FiniteSpace
    weights : tuple of float
        One nonnegative mass per point, summing to 1 within 1e-12.
    """

    space: FiniteSpace
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != len(self.space):
            raise ValueError("one weight per point of the space is required")
        for w in weights:
            if not math.isfinite(w) or w < 0.0:
                raise ValueError(f"classical weights must be finite and >= 0, got {w!r}")
        total = math.fsum(weights)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"classical weights must sum to 1, got {total!r}")
        object.__setattr__(self, "weights", weights)

    def weight(self, label: str) -> float:
        return self.weights[self.space.index(label)]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(
            p for p, w in zip(self.space.points, self.weights) if w > 0.0
        )


Measure = Union[IdempotentMeasure, ClassicalMeasure]


# -- constructors ------------------------------------------------------------


def dirac(space: FiniteSpace, point: str) -> IdempotentMeasure:
    """The idempotent point measure: weight 0 at ``point``, BOTTOM elsewhere."""
    at = space.index(point)
    return IdempotentMeasure(
        space, tuple(0.0 if i == at else BOTTOM for i in range(len(space)))
    )


def point_mass(space: FiniteSpace, point: str) -> ClassicalMeasure:
    """The classical point measure: mass 1 at ``point``, 0 elsewhere."""
    at = space.index(point)
    return ClassicalMeasure(
        space, tuple(1.0 if i == at else 0.0 for i in range(len(space)))
    )


def normalize_idempotent(
    space: FiniteSpace,
    raw: Union[Mapping[str, object], Sequence[object]],
) -> IdempotentMeasure:
    """Shift raw max-plus weights so their maximum is exactly 0.

    ``raw`` is either a mapping keyed by every point label or a sequence
    aligned with the space order.  All-BOTTOM input has empty support
    and is rejected.
    """
    values = _aligned_scalars(space, raw)
    peak = big_oplus(values)
    if peak is BOTTOM:
        raise ValueError("empty support: every weight is BOTTOM")
    shifted = tuple(BOTTOM if v is BOTTOM else v - peak for v in values)
    return IdempotentMeasure(space, shifted)


def classical_measure(
    space: FiniteSpace,
    weights: Union[Mapping[str, object], Sequence[object]],
    renormalize: bool = False,
) -> ClassicalMeasure:
    """Build a classical measure from nonnegative masses.

    Input sums further than 1e-9 from 1 are rejected unless
    ``renormalize`` is set; silent rescaling of malformed input tends to
    hide ingestion bugs.  Within the gate, masses are divided by their
    sum so the stored vector meets the 1e-12 invariant; masses that
    already meet it are kept bit for bit, which makes the constructor
    idempotent and decode(encode(m)) exact.
    """
    if isinstance(weights, Mapping):
        _check_exact_keys(space, weights, "weights")
        values = [float(weights[p]) for p in space.points]  # type: ignore[arg-type]
    else:
        values = [float(w) for w in weights]
        if len(values) != len(space):
            raise ValueError("one weight per point of the space is required")
    for v in values:
        if not math.isfinite(v) or v < 0.0:
            raise ValueError(f"classical weights must be finite and >= 0, got {v!r}")
    total = math.fsum(values)
    if total <= 0.0:
        raise ValueError("empty support: weights sum to 0")
    if not renormalize and abs(total - 1.0) > _INPUT_SUM_TOL:
        raise ValueError(
            f"weights sum to {total!r}, not 1; pass renormalize=True to rescale"
        )
    if abs(total - 1.0) <= _SUM_TOL:
        return ClassicalMeasure(space, tuple(values))
    return ClassicalMeasure(space, tuple(v / total for v in values))


# -- evaluation and support --------------------------------------------------


def evaluate_idempotent(mu: IdempotentMeasure, phi: TestFunction) -> float:
    """Max-plus integral: ``max_i (weight_i + phi(x_i))`` over the support.

    Always finite, because some weight is exactly 0.
    """
    if mu.space != phi.space:
        raise ValueError("space mismatch between measure and function")
    best: float | None = None
    for w, v in zip(mu.weights, phi.values):
        if w is BOTTOM:
            continue
        s = w + v
        if best is None or s > best:
            best = s
    assert best is not None  # the weight invariant guarantees an atom
    return best


def evaluate_classical(mu: ClassicalMeasure, phi: TestFunction) -> float:
    """Expectation of ``phi`` under a classical measure."""
    if mu.space != phi.space:
        raise ValueError("space mismatch between measure and function")
    return math.fsum(w * v for w, v in zip(mu.weights, phi.values))


def evaluate(mu: Measure, phi: TestFunction) -> float:
    """Evaluate ``phi`` under either kind of measure."""
    if isinstance(mu, IdempotentMeasure):
        return evaluate_idempotent(mu, phi)
    if isinstance(mu, ClassicalMeasure):
        return evaluate_classical(mu, phi)
    raise TypeError(f"not a measure: {mu!r}")


def support(mu: Measure) -> frozenset[str]:
    """The set of points carrying weight: finite weights, or positive mass."""
    if isinstance(mu, (IdempotentMeasure, ClassicalMeasure)):
        return mu.support
    raise TypeError(f"not a measure: {mu!r}")


def maxplus_combine(
    alpha: MaxPlusValue,
    mu: IdempotentMeasure,
    beta: MaxPlusValue,
    nu: IdempotentMeasure,
) -> IdempotentMeasure:
    """Max-plus convex combination ``alpha (.) mu (+) beta (.) nu``.

    Requires ``alpha oplus beta == 0`` exactly, which is what keeps the
    result normalized.  With one coefficient BOTTOM the other endpoint
    is returned unchanged.
    """
    alpha = as_scalar(alpha)
    beta = as_scalar(beta)
    if mu.space != nu.space:
        raise ValueError("space mismatch between measures")
    if oplus(alpha, beta) != 0.0:
        raise ValueError(
            "not a max-plus convex combination: alpha oplus beta must equal 0"
        )
    weights = tuple(
        oplus(odot(alpha, w), odot(beta, v)) for w, v in zip(mu.weights, nu.weights)
    )
    return IdempotentMeasure(mu.space, weights)


def has_support_at_most(mu: Measure, n: int) -> bool:
    """Whether the support of ``mu`` has at most ``n`` atoms (n >= 1)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"the atom budget must be a positive integer, got {n!r}")
    return len(support(mu)) <= n


# -- helpers -----------------------------------------------------------------


def _check_exact_keys(space: FiniteSpace, mapping: Mapping, what: str) -> None:
    missing = [p for p in space.points if p not in mapping]
    if missing:
        raise ValueError(f"{what} missing for points: {missing!r}")
    extra = [k for k in mapping if k not in space]
    if extra:
        raise ValueError(f"{what} given for unknown points: {extra!r}")


def _aligned_scalars(
    space: FiniteSpace, raw: Union[Mapping[str, object], Sequence[object]]
) -> tuple[MaxPlusValue, ...]:
    if isinstance(raw, Mapping):
        _check_exact_keys(space, raw, "weights")
        return tuple(as_scalar(raw[p]) for p in space.points)
    values = tuple(as_scalar(v) for v in raw)
    if len(values) != len(space):
        raise ValueError("one weight per point of the space is required")
    return values
