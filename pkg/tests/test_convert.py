from __future__ import annotations

import math
import random

import pytest
from hypothesis import assume, given

from maxplusprob import (
    BOTTOM,
    FiniteSpace,
    IdempotentMeasure,
    PointMap,
    classical_measure,
    dirac,
    naturality_gap,
    point_mass,
    roundtrip_gap,
    support,
    to_classical,
    to_idempotent,
)

from gen import (
    classical_on,
    idempotent_on,
    random_classical,
    random_idempotent,
    random_space,
    space_of,
    spaces,
)
from hypothesis import strategies as st

ABC = FiniteSpace(("a", "b", "c"))
AB = FiniteSpace(("a", "b"))


# -- the two directions on worked instances --------------------------------------


def test_log_ratio_of_worked_triple():
    mu = classical_measure(ABC, (0.5, 0.3, 0.2))
    out = to_idempotent(mu)
    assert out.weights[0] == 0.0
    assert out.weights[1] == pytest.approx(math.log(0.6), abs=1e-12)
    assert out.weights[2] == pytest.approx(math.log(0.4), abs=1e-12)


def test_softmax_of_flat_pair():
    mu = IdempotentMeasure(AB, (0.0, 0.0))
    assert to_classical(mu).weights == (0.5, 0.5)


def test_point_measures_are_fixed_points():
    assert to_classical(dirac(ABC, "b")) == point_mass(ABC, "b")
    assert to_idempotent(point_mass(ABC, "b")) == dirac(ABC, "b")
    assert to_idempotent(point_mass(ABC, "b")).weights[1] == 0.0


def test_uniform_measures_correspond():
    n = 4
    space = space_of(n)
    flat = IdempotentMeasure(space, (0.0,) * n)
    uniform = to_classical(flat)
    assert uniform.weights == (0.25, 0.25, 0.25, 0.25)
    assert to_idempotent(uniform) == flat


def test_zero_mass_and_bottom_exchange():
    mu = classical_measure(ABC, (0.7, 0.0, 0.3))
    out = to_idempotent(mu)
    assert out.weights[1] is BOTTOM
    assert support(out) == support(mu)
    back = to_classical(out)
    assert back.weights[1] == 0.0


# -- roundtrips ------------------------------------------------------------------


def test_roundtrip_gap_on_seeded_sweep():
    rng = random.Random(21)
    for _ in range(300):
        space = random_space(rng)
        assert roundtrip_gap(random_idempotent(rng, space)) <= 1e-9
        assert roundtrip_gap(random_classical(rng, space)) <= 1e-9


def test_roundtrip_gap_rejects_non_measures():
    with pytest.raises(TypeError):
        roundtrip_gap({"a": 1.0})


@given(spaces.flatmap(idempotent_on))
def test_roundtrip_preserves_support_idempotent(mu):
    back = to_idempotent(to_classical(mu))
    assert support(back) == support(mu)
    assert roundtrip_gap(mu) <= 1e-9


@given(spaces.flatmap(classical_on))
def test_roundtrip_preserves_support_classical(mu):
    back = to_classical(to_idempotent(mu))
    assert support(back) == support(mu)
    assert roundtrip_gap(mu) <= 1e-9


@given(spaces.flatmap(classical_on))
def test_argmax_atoms_become_weight_zero_atoms(mu):
    # Integer masses make ties exact, so the comparison is crisp.
    top = max(mu.weights)
    argmax = {p for p, w in zip(mu.space.points, mu.weights) if w == top}
    out = to_idempotent(mu)
    peak_atoms = {p for p, w in zip(out.space.points, out.weights) if w == 0.0}
    assert peak_atoms == argmax


@given(spaces.flatmap(idempotent_on))
def test_weight_zero_atoms_become_argmax_atoms(mu):
    # Weights within an ulp of 0 exponentiate to exactly 1.0 and join
    # the argmax; the exact correspondence needs the rest separated.
    assume(all(w is BOTTOM or w == 0.0 or w <= -1e-9 for w in mu.weights))
    peak_atoms = {p for p, w in zip(mu.space.points, mu.weights) if w == 0.0}
    out = to_classical(mu)
    top = max(out.weights)
    argmax = {p for p, w in zip(out.space.points, out.weights) if w == top}
    assert argmax == peak_atoms


# -- continuity along 1/t sequences ----------------------------------------------


def test_log_ratio_is_continuous_along_a_mass_sequence():
    base = (0.5, 0.3, 0.2)
    direction = (0.02, -0.01, -0.01)
    limit = to_idempotent(classical_measure(ABC, base))
    for t in (1, 2, 5, 10, 100, 1000, 10_000):
        masses = tuple(b + d / t for b, d in zip(base, direction))
        step = to_idempotent(classical_measure(ABC, masses, renormalize=True))
        gap = max(abs(x - y) for x, y in zip(step.weights, limit.weights))
        assert gap <= 0.5 / t


def test_softmax_is_continuous_along_a_weight_sequence():
    base = (0.0, -0.5, -1.0)
    direction = (0.0, 0.01, -0.02)
    limit = to_classical(IdempotentMeasure(ABC, base))
    for t in (1, 2, 5, 10, 100, 1000, 10_000):
        weights = tuple(b + d / t for b, d in zip(base, direction))
        step = to_classical(IdempotentMeasure(ABC, weights))
        gap = max(abs(x - y) for x, y in zip(step.weights, limit.weights))
        assert gap <= 0.5 / t


# -- naturality of the conversion -------------------------------------------------


def test_merging_map_shows_the_known_gap():
    f = PointMap(ABC, AB, ("a", "b", "a"))
    mu = classical_measure(ABC, (0.4, 0.2, 0.4))
    assert naturality_gap(f, mu) == pytest.approx(math.log(2.0), abs=1e-12)


def test_naturality_gap_space_mismatch():
    f = PointMap(ABC, AB, ("a", "b", "a"))
    with pytest.raises(ValueError, match="space mismatch"):
        naturality_gap(f, classical_measure(AB, (0.5, 0.5)))


@given(spaces.flatmap(classical_on), st.randoms(use_true_random=False))
def test_injective_maps_have_zero_gap(mu, rng):
    # Embed into a larger codomain through a random injection: fiber
    # sums and fiber maxima then act atom by atom, so the gap is 0.
    domain = mu.space
    extended = FiniteSpace(tuple("abcdefgh"[: len(domain) + 2]))
    slots = list(extended.points)
    rng.shuffle(slots)
    f = PointMap(domain, extended, tuple(slots[: len(domain)]))
    assert naturality_gap(f, mu) == 0.0


def test_merging_equal_masses_keeps_gap_zero():
    # The mismatch needs unequal masses in one fiber; a tie merges
    # without error because max and sum then renormalize identically.
    f = PointMap(AB, space_of(1), ("a", "a"))
    mu = classical_measure(AB, (0.5, 0.5))
    assert naturality_gap(f, mu) == 0.0
