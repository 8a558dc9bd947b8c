"""JSON encoding and schema-checked decoding of the library's value types.

Wire formats:

* measure: ``{"space": [...], "kind": "idempotent" | "classical",
  "weights": {label: number | "-inf", ...}}``; the string ``"-inf"``
  is the only spelling of BOTTOM.
* test function: ``{"space": [...], "values": {label: number, ...}}``
* point map: ``{"domain": [...], "codomain": [...],
  "map": {label: label, ...}}``
* piecewise-linear density or function:
  ``{"breakpoints": [[x, y], ...], "lipschitz": number}``

Decoders validate shape first and report the offending path; value
invariants (normalization, mass sums) are then enforced by the type
constructors and re-raised with the same path prefix.
"""

from __future__ import annotations

import math
from typing import Union

from .density import ContinuousTestFunction, ConvergenceReport, DensityMeasure
from .functors import CounterexampleReport, PointMap
from .measures import (
    ClassicalMeasure,
    FiniteSpace,
    IdempotentMeasure,
    Measure,
    TestFunction,
    classical_measure,
)
from .semiring import BOTTOM, MaxPlusValue

__all__ = [
    "SchemaError",
    "decode_continuous_function",
    "decode_density",
    "decode_function",
    "decode_measure",
    "decode_point_map",
    "encode_convergence_report",
    "encode_counterexample_report",
    "encode_measure",
    "encode_scalar",
]


class SchemaError(ValueError):
    """An input document does not match its schema; ``path`` locates the node."""

    def __init__(self, path: str, message: str):
        self.path = path or "$"
        super().__init__(f"{self.path}: {message}")


def _expect_object(node: object, path: str) -> dict:
    if not isinstance(node, dict):
        raise SchemaError(path, f"expected an object, got {type(node).__name__}")
    return node


def _expect_keys(node: dict, path: str, keys: tuple[str, ...]) -> None:
    for key in keys:
        if key not in node:
            raise SchemaError(path, f"missing key {key!r}")
    for key in node:
        if key not in keys:
            raise SchemaError(f"{path}.{key}" if path else key, "unexpected key")


def _expect_string(node: object, path: str) -> str:
    if not isinstance(node, str):
        raise SchemaError(path, f"expected a string, got {type(node).__name__}")
    return node


def _expect_number(node: object, path: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(node).__name__}")
    value = float(node)
    if not math.isfinite(value):
        raise SchemaError(path, "expected a finite number")
    return value


def _decode_scalar(node: object, path: str) -> MaxPlusValue:
    if node == "-inf":
        return BOTTOM
    if isinstance(node, str):
        raise SchemaError(path, f'expected a number or "-inf", got {node!r}')
    return _expect_number(node, path)


def _decode_space(node: object, path: str) -> FiniteSpace:
    if not isinstance(node, list):
        raise SchemaError(path, f"expected a list of labels, got {type(node).__name__}")
    labels = [
        _expect_string(item, f"{path}[{i}]") for i, item in enumerate(node)
    ]
    try:
        return FiniteSpace(tuple(labels))
    except ValueError as err:
        raise SchemaError(path, str(err)) from None


def _decode_table(node: object, path: str, space: FiniteSpace) -> dict[str, object]:
    table = _expect_object(node, path)
    missing = [p for p in space.points if p not in table]
    if missing:
        raise SchemaError(path, f"missing entries for points: {missing!r}")
    extra = [k for k in table if k not in space]
    if extra:
        raise SchemaError(path, f"entries for unknown points: {extra!r}")
    return table


def decode_measure(doc: object) -> Measure:
    """Decode and validate a measure document of either kind."""
    root = _expect_object(doc, "")
    _expect_keys(root, "", ("space", "kind", "weights"))
    space = _decode_space(root["space"], "space")
    kind = _expect_string(root["kind"], "kind")
    if kind not in ("idempotent", "classical"):
        raise SchemaError("kind", f'expected "idempotent" or "classical", got {kind!r}')
    table = _decode_table(root["weights"], "weights", space)
    if kind == "idempotent":
        weights = tuple(
            _decode_scalar(table[p], f"weights.{p}") for p in space.points
        )
        try:
            return IdempotentMeasure(space, weights)
        except ValueError as err:
            raise SchemaError("weights", str(err)) from None
    masses = tuple(
        _expect_number(table[p], f"weights.{p}") for p in space.points
    )
    try:
        return classical_measure(space, masses, renormalize=False)
    except ValueError as err:
        raise SchemaError("weights", str(err)) from None


def decode_function(doc: object) -> TestFunction:
    """Decode and validate a finite test function document."""
    root = _expect_object(doc, "")
    _expect_keys(root, "", ("space", "values"))
    space = _decode_space(root["space"], "space")
    table = _decode_table(root["values"], "values", space)
    values = tuple(_expect_number(table[p], f"values.{p}") for p in space.points)
    try:
        return TestFunction(space, values)
    except ValueError as err:
        raise SchemaError("values", str(err)) from None


def decode_point_map(doc: object) -> PointMap:
    """Decode and validate a point map document."""
    root = _expect_object(doc, "")
    _expect_keys(root, "", ("domain", "codomain", "map"))
    domain = _decode_space(root["domain"], "domain")
    codomain = _decode_space(root["codomain"], "codomain")
    table = _decode_table(root["map"], "map", domain)
    images = tuple(
        _expect_string(table[p], f"map.{p}") for p in domain.points
    )
    try:
        return PointMap(domain, codomain, images)
    except ValueError as err:
        raise SchemaError("map", str(err)) from None


def _decode_piecewise(doc: object, cls: type, what: str):
    root = _expect_object(doc, "")
    _expect_keys(root, "", ("breakpoints", "lipschitz"))
    node = root["breakpoints"]
    if not isinstance(node, list):
        raise SchemaError("breakpoints", "expected a list of [x, y] pairs")
    pairs = []
    for i, item in enumerate(node):
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError(f"breakpoints[{i}]", "expected an [x, y] pair")
        pairs.append(
            (
                _expect_number(item[0], f"breakpoints[{i}][0]"),
                _expect_number(item[1], f"breakpoints[{i}][1]"),
            )
        )
    bound = _expect_number(root["lipschitz"], "lipschitz")
    try:
        return cls(tuple(pairs), bound)
    except ValueError as err:
        raise SchemaError("breakpoints", f"not a valid {what}: {err}") from None


def decode_density(doc: object) -> DensityMeasure:
    """Decode and validate a piecewise-linear density document."""
    return _decode_piecewise(doc, DensityMeasure, "density")


def decode_continuous_function(doc: object) -> ContinuousTestFunction:
    """Decode and validate a piecewise-linear test function document."""
    return _decode_piecewise(doc, ContinuousTestFunction, "piecewise-linear function")


# -- encoding ----------------------------------------------------------------


def encode_scalar(value: MaxPlusValue) -> Union[float, str]:
    """A finite float as itself, BOTTOM as the string ``"-inf"``."""
    if value is BOTTOM:
        return "-inf"
    return float(value)


def encode_measure(mu: Measure) -> dict:
    """The measure document for either kind."""
    if isinstance(mu, IdempotentMeasure):
        kind = "idempotent"
        weights = {
            p: encode_scalar(w) for p, w in zip(mu.space.points, mu.weights)
        }
    elif isinstance(mu, ClassicalMeasure):
        kind = "classical"
        weights = {p: float(w) for p, w in zip(mu.space.points, mu.weights)}
    else:
        raise TypeError(f"not a measure: {mu!r}")
    return {"space": list(mu.space.points), "kind": kind, "weights": weights}


def encode_counterexample_report(report: CounterexampleReport) -> dict:
    """The three-field report document for the separation probe."""
    return {
        "classical_injective": report.classical_injective,
        "idempotent_witness": {
            "mu": encode_measure(report.witness_mu),
            "nu": encode_measure(report.witness_nu),
            "image": {
                "under_f": encode_measure(report.witness_image_under_f),
                "under_g": encode_measure(report.witness_image_under_g),
            },
        },
        "naturality_gap": report.naturality_gap,
    }


def encode_convergence_report(report: ConvergenceReport) -> dict:
    """Rows of ``{n, error, bound}`` plus the reference value and verdicts."""
    return {
        "rows": [
            {"n": row.n, "error": row.error, "bound": row.bound}
            for row in report.rows
        ],
        "reference": report.reference,
        "within_bound": report.within_bound,
        "non_increasing": report.non_increasing,
    }
