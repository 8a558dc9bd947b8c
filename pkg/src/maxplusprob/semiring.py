"""Scalar arithmetic for the max-plus semiring.

Scalars are finite floats extended by ``BOTTOM`` (minus infinity).
``oplus`` is the maximum and ``odot`` is ordinary addition; ``BOTTOM``
is neutral for the former and absorbing for the latter.  ``BOTTOM`` is
a tagged singleton rather than ``float("-inf")`` so these identities
hold exactly and no IEEE special cases (``-inf + inf``, signed zero
surprises under exponentiation) can leak into results.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

__all__ = [
    "BOTTOM",
    "BottomType",
    "MaxPlusValue",
    "as_scalar",
    "big_oplus",
    "is_bottom",
    "mp_exp",
    "mp_ln",
    "odot",
    "oplus",
]


class BottomType:
    """The minus-infinity scalar, as a singleton tag."""

    __slots__ = ()
    _instance: "BottomType | None" = None

    def __new__(cls) -> "BottomType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = BottomType()

# A max-plus scalar: a finite float, or BOTTOM.
MaxPlusValue = Union[float, BottomType]


def is_bottom(value: MaxPlusValue) -> bool:
    """True when ``value`` is the BOTTOM (minus infinity) scalar."""
    return value is BOTTOM


def as_scalar(value: object) -> MaxPlusValue:
    """Coerce ``value`` to a max-plus scalar.

    Ints are widened to float.  NaN and the IEEE infinities are
    rejected; minus infinity must be passed as ``BOTTOM``.
    """
    if value is BOTTOM:
        return BOTTOM
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        out = float(value)
        if math.isfinite(out):
            return out
    raise ValueError(f"not a max-plus scalar (finite number or BOTTOM): {value!r}")


def oplus(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Max-plus addition: the maximum of ``a`` and ``b``."""
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def odot(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Max-plus multiplication: the sum, with BOTTOM absorbing."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def big_oplus(values: Iterable[MaxPlusValue]) -> MaxPlusValue:
    """Fold of ``oplus`` over ``values``; the empty fold is BOTTOM."""
    out: MaxPlusValue = BOTTOM
    for value in values:
        out = oplus(out, value)
    return out


def mp_exp(value: MaxPlusValue) -> float:
    """Exponential extended by ``exp(BOTTOM) = 0``."""
    if value is BOTTOM:
        return 0.0
    return math.exp(value)


def mp_ln(x: float) -> MaxPlusValue:
    """Logarithm extended by ``ln(0) = BOTTOM``; negative input is an error."""
    if x < 0.0:
        raise ValueError(f"ln of a negative number: {x!r}")
    if x == 0.0:
        return BOTTOM
    return math.log(x)
