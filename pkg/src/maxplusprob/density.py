"""Grid discretization of max-plus densities on the unit interval.

A density here is a piecewise-linear function ``d`` on ``[0, 1]`` with
``sup d = 0`` and ``d <= 0``; it plays the role of a continuous
idempotent measure, acting on a continuous test function ``phi`` by
``sup_x (d(x) + phi(x))``.

Discretization samples ``d`` on the uniform grid ``{k/n : k = 0..n}``
and renormalizes.  Evaluating the discretized measure against the
sampled test function approximates the continuous supremum with error
at most ``(L_phi + L_d) / n`` where the ``L`` are the declared
Lipschitz bounds: the true argmax lies within ``1/(2n)`` of a grid
point, and the normalization shift is itself at most ``L_d / (2n)``.
``convergence_report`` tabulates the observed errors against that
bound, using a fine-grid evaluation (default one million cells) as the
reference value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import (
    FiniteSpace,
    IdempotentMeasure,
    TestFunction,
    evaluate_idempotent,
    normalize_idempotent,
)

__all__ = [
    "ContinuousTestFunction",
    "ConvergenceReport",
    "ConvergenceRow",
    "DensityMeasure",
    "PiecewiseLinear",
    "convergence_report",
    "discretize",
    "eval_density_measure",
    "grid_points",
    "grid_space",
    "sample_function",
]

_MIN_RESOLUTION = 10_000
# Slack for the declared-Lipschitz check: breakpoint slopes are computed
# in floats, so an exact bound like 3 may come out a few ulps high.
_SLOPE_TOL = 1e-9
# A density may miss sup = 0 by this much before it is rejected.
_SUP_TOL = 1e-9


@dataclass(frozen=True)
class PiecewiseLinear:
    """A piecewise-linear function on ``[0, 1]`` with a declared Lipschitz bound.

    Parameters
    ----------
    breakpoints : tuple of (x, y) pairs
        Strictly increasing in x, starting at 0 and ending at 1.
    lipschitz : float
        Declared bound; every segment slope must respect it.
    """

    breakpoints: tuple[tuple[float, float], ...]
    lipschitz: float

    def __post_init__(self) -> None:
        pairs = tuple((float(x), float(y)) for x, y in self.breakpoints)
        object.__setattr__(self, "breakpoints", pairs)
        object.__setattr__(self, "lipschitz", float(self.lipschitz))
        if len(pairs) < 2:
            raise ValueError("at least two breakpoints are required")
        xs = [x for x, _ in pairs]
        ys = [y for _, y in pairs]
        if xs[0] != 0.0 or xs[-1] != 1.0:
            raise ValueError("breakpoints must start at x=0 and end at x=1")
        for a, b in zip(xs, xs[1:]):
            if not b > a:
                raise ValueError("breakpoint x values must be strictly increasing")
        for y in ys:
            if not math.isfinite(y):
                raise ValueError(f"breakpoint values must be finite: {y!r}")
        if not math.isfinite(self.lipschitz) or self.lipschitz < 0.0:
            raise ValueError("the Lipschitz bound must be finite and >= 0")
        for (x0, y0), (x1, y1) in zip(pairs, pairs[1:]):
            slope = (y1 - y0) / (x1 - x0)
            if abs(slope) > self.lipschitz + _SLOPE_TOL:
                raise ValueError(
                    f"segment slope {slope!r} exceeds the declared"
                    f" Lipschitz bound {self.lipschitz!r}"
                )

    @property
    def peak(self) -> float:
        """The supremum over [0, 1]; attained at a breakpoint."""
        return max(y for _, y in self.breakpoints)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Values at the given x array, by linear interpolation."""
        knots_x = np.array([x for x, _ in self.breakpoints])
        knots_y = np.array([y for _, y in self.breakpoints])
        return np.interp(xs, knots_x, knots_y)

    def __call__(self, x: float) -> float:
        return float(self.sample(np.array([float(x)]))[0])


@dataclass(frozen=True)
class DensityMeasure(PiecewiseLinear):
    """A piecewise-linear max-plus density: nonpositive with supremum 0.

    The supremum of a piecewise-linear function is attained at a
    breakpoint, so the constraint is checked there exactly instead of
    on a probe grid.
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        top = self.peak
        if top > 0.0:
            raise ValueError(f"a density must be <= 0 everywhere, peak is {top!r}")
        if top < -_SUP_TOL:
            raise ValueError(
                f"a density must have supremum 0 (within {_SUP_TOL}), peak is {top!r}"
            )


@dataclass(frozen=True)
class ContinuousTestFunction(PiecewiseLinear):
    """A piecewise-linear test function on ``[0, 1]``."""


def grid_points(n: int) -> list[float]:
    """The uniform grid ``k / n`` for ``k = 0..n`` (n + 1 points)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"the grid size must be a positive integer, got {n!r}")
    return [k / n for k in range(n + 1)]


def grid_space(n: int) -> FiniteSpace:
    """The grid as a finite space; labels are the shortest float reprs."""
    return FiniteSpace(tuple(repr(x) for x in grid_points(n)))


def discretize(d: DensityMeasure, n: int) -> IdempotentMeasure:
    """Sample a density on the ``n``-grid and renormalize the weights."""
    xs = np.array(grid_points(n))
    raw = d.sample(xs)
    return normalize_idempotent(grid_space(n), [float(v) for v in raw])


def sample_function(phi: ContinuousTestFunction, n: int) -> TestFunction:
    """Restrict a continuous test function to the ``n``-grid."""
    xs = np.array(grid_points(n))
    return TestFunction(grid_space(n), tuple(float(v) for v in phi.sample(xs)))


def eval_density_measure(
    d: DensityMeasure, phi: ContinuousTestFunction, resolution: int
) -> float:
    """Reference value of ``sup_x (d(x) + phi(x))`` on a fine grid.

    ``resolution`` is the cell count; at least 10000 cells are required
    for the reference role.
    """
    if not isinstance(resolution, int) or isinstance(resolution, bool):
        raise ValueError(f"the resolution must be an integer, got {resolution!r}")
    if resolution < _MIN_RESOLUTION:
        raise ValueError(
            f"the resolution must be at least {_MIN_RESOLUTION}, got {resolution}"
        )
    xs = np.arange(resolution + 1, dtype=np.float64) / float(resolution)
    return float(np.max(d.sample(xs) + phi.sample(xs)))


@dataclass(frozen=True)
class ConvergenceRow:
    """One grid size: the observed error and its Lipschitz bound."""

    n: int
    error: float
    bound: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Observed discretization errors against the ``(L_phi + L_d) / n`` bound.

    ``within_bound`` holds when every row respects its bound;
    ``non_increasing`` when errors do not grow as the grid refines
    (with 1e-12 slack, and rows ordered by increasing ``n``).
    """

    rows: tuple[ConvergenceRow, ...]
    reference: float
    within_bound: bool
    non_increasing: bool


def convergence_report(
    d: DensityMeasure,
    phi: ContinuousTestFunction,
    ns: list[int],
    resolution: int = 1_000_000,
) -> ConvergenceReport:
    """Tabulate discretization errors for the given grid sizes.

    Grid sizes are deduplicated and sorted; each row compares the
    discretized evaluation with the fine-grid reference value.
    """
    sizes = sorted(set(ns))
    if not sizes:
        raise ValueError("at least one grid size is required")
    reference = eval_density_measure(d, phi, resolution)
    rows = []
    for n in sizes:
        value = evaluate_idempotent(discretize(d, n), sample_function(phi, n))
        error = abs(value - reference)
        bound = (phi.lipschitz + d.lipschitz) / n
        rows.append(ConvergenceRow(n=n, error=error, bound=bound))
    within = all(r.error <= r.bound for r in rows)
    monotone = all(b.error <= a.error + 1e-12 for a, b in zip(rows, rows[1:]))
    return ConvergenceReport(
        rows=tuple(rows),
        reference=reference,
        within_bound=within,
        non_increasing=monotone,
    )
