"""Pushforwards, product measures, and the paired-pushforward probe.

A ``PointMap`` between finite spaces transports measures: idempotent
weights move by taking the fiberwise maximum, classical masses by the
fiberwise sum.  Products pair two measures on the product space, with
atom weight ``w_x + w_y`` (idempotent) or ``w_x * w_y`` (classical).

``verify_counterexample`` runs a fixed three-point scenario in which the
pair of pushforwards under two maps separates classical measures but
fails to separate idempotent ones, and measures how far the
classical-to-idempotent conversion is from commuting with a
non-injective pushforward.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .measures import (
    ClassicalMeasure,
    FiniteSpace,
    IdempotentMeasure,
    Measure,
    TestFunction,
    classical_measure,
)
from .semiring import BOTTOM, MaxPlusValue, big_oplus, odot

__all__ = [
    "CounterexampleReport",
    "PointMap",
    "ProductSpace",
    "compose",
    "pair_map_image",
    "product_classical",
    "product_function",
    "product_idempotent",
    "pushforward",
    "pushforward_classical",
    "pushforward_idempotent",
    "reconstruct_product",
    "verify_counterexample",
]


@dataclass(frozen=True)
class PointMap:
    """A total map between finite spaces, one image label per domain point.

    Parameters
    ----------
    domain, codomain : FiniteSpace
    assignment : tuple of str
        Image labels aligned with the domain order.
    """

    domain: FiniteSpace
    codomain: FiniteSpace
    assignment: tuple[str, ...]
    _fibers: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        assignment = tuple(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != len(self.domain):
            raise ValueError("one image per domain point is required")
        fibers: list[list[int]] = [[] for _ in range(len(self.codomain))]
        for i, label in enumerate(assignment):
            try:
                j = self.codomain.index(label)
            except ValueError:
                raise ValueError(
                    f"image {label!r} of point {self.domain.points[i]!r}"
                    " is not in the codomain"
                ) from None
            fibers[j].append(i)
        object.__setattr__(self, "_fibers", tuple(tuple(f) for f in fibers))

    @classmethod
    def from_mapping(
        cls,
        domain: FiniteSpace,
        codomain: FiniteSpace,
        mapping: Mapping[str, str],
    ) -> "PointMap":
        missing = [p for p in domain.points if p not in mapping]
        if missing:
            raise ValueError(f"map missing for points: {missing!r}")
        extra = [k for k in mapping if k not in domain]
        if extra:
            raise ValueError(f"map given for unknown points: {extra!r}")
        return cls(domain, codomain, tuple(mapping[p] for p in domain.points))

    @classmethod
    def identity(cls, space: FiniteSpace) -> "PointMap":
        return cls(space, space, space.points)

    def __call__(self, label: str) -> str:
        return self.assignment[self.domain.index(label)]


def compose(outer: PointMap, inner: PointMap) -> PointMap:
    """The map ``outer after inner``; domains must chain."""
    if inner.codomain != outer.domain:
        raise ValueError("maps do not compose: inner codomain differs from outer domain")
    return PointMap(
        inner.domain,
        outer.codomain,
        tuple(outer(label) for label in inner.assignment),
    )


@dataclass(frozen=True)
class ProductSpace:
    """The product of two finite spaces, with points labeled ``(x,y)``.

    ``space`` is a plain ``FiniteSpace`` over the pair labels, ordered
    left-major, so product measures live on an ordinary space and
    serialize like any other measure.
    """

    left: FiniteSpace
    right: FiniteSpace
    space: FiniteSpace

    @classmethod
    def of(cls, left: FiniteSpace, right: FiniteSpace) -> "ProductSpace":
        labels = tuple(f"({x},{y})" for x in left.points for y in right.points)
        return cls(left, right, FiniteSpace(labels))

    def pair_label(self, x: str, y: str) -> str:
        return f"({x},{y})"

    def pair_index(self, i: int, j: int) -> int:
        return i * len(self.right) + j


def product_function(phi: TestFunction, psi: TestFunction) -> TestFunction:
    """The function ``(x, y) -> phi(x) + psi(y)`` on the product space."""
    prod = ProductSpace.of(phi.space, psi.space)
    values = tuple(a + b for a in phi.values for b in psi.values)
    return TestFunction(prod.space, values)


# -- pushforwards ------------------------------------------------------------


def pushforward_idempotent(f: PointMap, mu: IdempotentMeasure) -> IdempotentMeasure:
    """Transport an idempotent measure: each image point gets its fiber maximum.

    Points with empty fiber get BOTTOM; the overall maximum is still
    exactly 0, so the result is normalized by construction.
    """
    if mu.space != f.domain:
        raise ValueError("space mismatch: measure does not live on the map domain")
    weights = tuple(big_oplus(mu.weights[i] for i in fiber) for fiber in f._fibers)
    return IdempotentMeasure(f.codomain, weights)


def pushforward_classical(f: PointMap, mu: ClassicalMeasure) -> ClassicalMeasure:
    """Transport a classical measure: each image point gets its fiber sum."""
    if mu.space != f.domain:
        raise ValueError("space mismatch: measure does not live on the map domain")
    weights = tuple(sum(mu.weights[i] for i in fiber) for fiber in f._fibers)
    return ClassicalMeasure(f.codomain, weights)


def pushforward(f: PointMap, mu: Measure) -> Measure:
    """Transport either kind of measure along ``f``."""
    if isinstance(mu, IdempotentMeasure):
        return pushforward_idempotent(f, mu)
    if isinstance(mu, ClassicalMeasure):
        return pushforward_classical(f, mu)
    raise TypeError(f"not a measure: {mu!r}")


# -- products ----------------------------------------------------------------


def product_idempotent(
    mu: IdempotentMeasure, nu: IdempotentMeasure
) -> IdempotentMeasure:
    """The max-plus product measure: atom ``(x, y)`` weighs ``w_x + w_y``.

    This is the unique measure with ``m(phi (.) psi) = mu(phi) + nu(psi)``
    for split functions; ``reconstruct_product`` checks that uniqueness
    constructively.
    """
    prod = ProductSpace.of(mu.space, nu.space)
    weights = tuple(odot(a, b) for a in mu.weights for b in nu.weights)
    return IdempotentMeasure(prod.space, weights)


def product_classical(mu: ClassicalMeasure, nu: ClassicalMeasure) -> ClassicalMeasure:
    """The ordinary product measure: atom ``(x, y)`` weighs ``w_x * w_y``."""
    prod = ProductSpace.of(mu.space, nu.space)
    weights = tuple(a * b for a in mu.weights for b in nu.weights)
    return ClassicalMeasure(prod.space, weights)


def _evaluate_maxplus(
    mu: IdempotentMeasure, values: Sequence[MaxPlusValue]
) -> MaxPlusValue:
    # Evaluation extended to functions taking BOTTOM values.  Kept
    # module-private: public test functions stay finite, but indicator
    # functions (0 at one point, BOTTOM elsewhere) need this.
    return big_oplus(odot(w, v) for w, v in zip(mu.weights, values))


def _indicator(space: FiniteSpace, at: int) -> tuple[MaxPlusValue, ...]:
    return tuple(0.0 if i == at else BOTTOM for i in range(len(space)))


def reconstruct_product(
    mu: IdempotentMeasure, nu: IdempotentMeasure
) -> IdempotentMeasure:
    """Rebuild the product measure from factor evaluations alone.

    Every function on the product space is a max-plus combination of
    paired indicators, so a product candidate is pinned down by the
    numbers ``mu(chi_x) + nu(chi_y)``.  Computing the atoms that way,
    through the evaluation functional rather than by reading weights,
    must reproduce ``product_idempotent`` exactly.
    """
    prod = ProductSpace.of(mu.space, nu.space)
    left = [_evaluate_maxplus(mu, _indicator(mu.space, i)) for i in range(len(mu.space))]
    right = [_evaluate_maxplus(nu, _indicator(nu.space, j)) for j in range(len(nu.space))]
    weights = tuple(odot(a, b) for a in left for b in right)
    return IdempotentMeasure(prod.space, weights)


# -- the paired-pushforward probe --------------------------------------------


def pair_map_image(f: PointMap, g: PointMap, mu: Measure) -> tuple[Measure, Measure]:
    """Push ``mu`` forward under both maps, returning the pair of images."""
    if f.domain != g.domain:
        raise ValueError("the two maps must share a domain")
    return (pushforward(f, mu), pushforward(g, mu))


@dataclass(frozen=True)
class CounterexampleReport:
    """Outcome of the paired-pushforward separation probe.

    ``classical_injective`` holds when the exact linear-algebra check
    and every sampled pair agree that equal classical images force equal
    measures.  The witness fields exhibit two distinct idempotent
    measures with identical images, and ``naturality_gap`` is the
    conversion mismatch observed under the non-injective map.
    """

    classical_injective: bool
    exact_solution_unique: bool
    random_pairs_checked: int
    grid_pairs_checked: int
    witness_mu: IdempotentMeasure
    witness_nu: IdempotentMeasure
    witness_image_under_f: IdempotentMeasure
    witness_image_under_g: IdempotentMeasure
    witness_images_equal: bool
    naturality_gap: float


def _fixture() -> tuple[FiniteSpace, PointMap, PointMap]:
    domain = FiniteSpace(("a", "b", "c"))
    into_y = FiniteSpace(("a", "b"))
    into_z = FiniteSpace(("a", "c"))
    f = PointMap(domain, into_y, ("a", "b", "a"))
    g = PointMap(domain, into_z, ("a", "a", "c"))
    return domain, f, g


def _kernel_is_trivial(rows: Sequence[Sequence[int]], unknowns: int) -> bool:
    # Exact Gaussian elimination over the rationals: the paired image is
    # a linear map of the mass vector, and injectivity on the simplex
    # follows from a trivial kernel.
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    for col in range(unknowns):
        pivot = next(
            (r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None
        )
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][col]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                scale = matrix[r][col] / lead
                matrix[r] = [
                    a - scale * b for a, b in zip(matrix[r], matrix[rank])
                ]
        rank += 1
    return rank == unknowns


def _image_gap(one: tuple[Measure, Measure], two: tuple[Measure, Measure]) -> float:
    gap = 0.0
    for a, b in zip(one, two):
        for x, y in zip(a.weights, b.weights):
            gap = max(gap, abs(x - y))
    return gap


def verify_counterexample(
    random_pairs: int = 10_000, seed: int = 0
) -> CounterexampleReport:
    """Run the separation probe on the fixed three-point scenario.

    The domain is ``{a, b, c}`` with maps ``f: a,c -> a, b -> b`` and
    ``g: a,b -> a, c -> c``.  Classically the paired image determines
    the measure (checked exactly over the rationals and on randomized
    plus gridded samples).  Idempotently it does not: the report carries
    two distinct measures sharing one image, and the naturality gap of
    the conversion under ``f``.
    """
    # Imported here: the conversion module itself builds on pushforwards.
    from .convert import naturality_gap

    domain, f, g = _fixture()

    # (i) exact reasoning: image coordinates as linear forms in the masses.
    coordinate_forms = ((1, 0, 1), (0, 1, 0), (1, 1, 0), (0, 0, 1))
    exact_unique = _kernel_is_trivial(coordinate_forms, 3)

    # (i) randomized search for an implication failure.
    rng = random.Random(seed)

    def random_classical() -> ClassicalMeasure:
        raw = [rng.uniform(0.0, 1.0) for _ in range(3)]
        if max(raw) == 0.0:
            raw[rng.randrange(3)] = 1.0
        return classical_measure(domain, raw, renormalize=True)

    implication_holds = True
    for k in range(random_pairs):
        mu = random_classical()
        nu = mu if k % 8 == 0 else random_classical()
        if _image_gap(pair_map_image(f, g, mu), pair_map_image(f, g, nu)) <= 1e-9:
            if max(abs(x - y) for x, y in zip(mu.weights, nu.weights)) > 1e-9:
                implication_holds = False

    # (i) gridded search over the whole simplex, boundary included.
    step = 12
    grid: list[ClassicalMeasure] = []
    for i in range(step + 1):
        for j in range(step + 1 - i):
            k = step - i - j
            grid.append(
                classical_measure(
                    domain, (i / step, j / step, k / step), renormalize=True
                )
            )
    grid_images = [pair_map_image(f, g, m) for m in grid]
    grid_pairs = 0
    for a in range(len(grid)):
        for b in range(a, len(grid)):
            grid_pairs += 1
            if _image_gap(grid_images[a], grid_images[b]) <= 1e-9:
                if max(
                    abs(x - y) for x, y in zip(grid[a].weights, grid[b].weights)
                ) > 1e-9:
                    implication_holds = False

    # (ii) the idempotent witness: distinct measures, one image.
    witness_mu = IdempotentMeasure(domain, (-1.0, 0.0, 0.0))
    witness_nu = IdempotentMeasure(domain, (-2.0, 0.0, 0.0))
    image_mu = pair_map_image(f, g, witness_mu)
    image_nu = pair_map_image(f, g, witness_nu)
    images_equal = image_mu == image_nu and witness_mu != witness_nu

    # (iii) the conversion does not commute with the non-injective f.
    probe = classical_measure(domain, (0.4, 0.2, 0.4), renormalize=True)
    gap = naturality_gap(f, probe)

    return CounterexampleReport(
        classical_injective=exact_unique and implication_holds,
        exact_solution_unique=exact_unique,
        random_pairs_checked=random_pairs,
        grid_pairs_checked=grid_pairs,
        witness_mu=witness_mu,
        witness_nu=witness_nu,
        witness_image_under_f=image_mu[0],
        witness_image_under_g=image_mu[1],
        witness_images_equal=images_equal,
        naturality_gap=gap,
    )
