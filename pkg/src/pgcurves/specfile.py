"""JSON curve specification files.

::

    {"form": "graph", "name": "...", "y": "...", "z": "...", "domain": [a, b],
     "samples": 1001, "origin": [0, 0, 0]}
    {"form": "intrinsic", "kappa": "...", "tau": "...", "domain": [a, b],
     "constants": {"c0": 0, "c1": 0, "c2": 0, "u0": 0, "c5": 0},
     "start_point": [y0, z0], "start_tangent": [ty0, tz0]}
    {"form": "samples", "points": [[s, x, y, z], ...]}

``samples`` is always the grid size; sampled curves carry their rows under
``points``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .expr import ExprSyntaxError, UnknownIdentifierError, parse
from .frenet import GraphCurve, SampledCurve
from .geometry import GVector
from .reconstruct import IntrinsicSpec

__all__ = ["SpecError", "CurveSpec", "load_spec", "parse_spec"]

FORMS = ("graph", "intrinsic", "samples")
COMMON = {"form", "name", "domain", "samples", "origin", "description"}
PER_FORM = {
    "graph": {"y", "z", "variable"},
    "intrinsic": {"kappa", "tau", "variable", "constants", "start_point", "start_tangent"},
    "samples": {"points"},
}
CONSTANTS = ("c0", "c1", "c2", "u0", "c5")


class SpecError(ValueError):
    """Invalid specification; names the offending field (and column for expressions)."""

    def __init__(self, field_name: str, message: str, column: Optional[int] = None):
        where = f"field {field_name!r}"
        if column is not None:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")
        self.field = field_name
        self.column = column


@dataclass(frozen=True)
class CurveSpec:
    form: str
    name: str
    domain: Optional[tuple]
    samples: Optional[int]
    origin: GVector
    curve: object
    constants: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    def grid_size(self, override=None, default=1001):
        n = override or self.samples or default
        return n + 1 if n % 2 == 0 else n

    def echo(self):
        """The input as read, with sample rows replaced by their count."""
        out = dict(self.raw)
        if "points" in out:
            out["points"] = f"{len(out['points'])} rows"
        return out


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise SpecError(name, "must be a finite number")
    return float(value)


def _vector(value, name, size):
    if not isinstance(value, list) or len(value) != size:
        raise SpecError(name, f"must be a list of {size} numbers")
    return tuple(_number(v, name) for v in value)


def _expr(data, name, variable):
    text = data.get(name)
    if not isinstance(text, str):
        raise SpecError(name, "missing expression string")
    try:
        return parse(text, variable)
    except (ExprSyntaxError, UnknownIdentifierError) as exc:
        message = str(exc).rsplit(" at column ", 1)[0]
        raise SpecError(name, message, exc.column) from None


def parse_spec(data: dict) -> CurveSpec:
    if not isinstance(data, dict):
        raise SpecError("<root>", "specification must be a JSON object")
    form = data.get("form")
    if form not in FORMS:
        raise SpecError("form", f"must be one of {', '.join(FORMS)}")
    unknown = sorted(set(data) - COMMON - PER_FORM[form])
    if unknown:
        raise SpecError(unknown[0], f"unknown field for form {form!r}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise SpecError("name", "must be a string")

    samples = data.get("samples")
    if samples is not None:
        if isinstance(samples, bool) or not isinstance(samples, int) or samples < 9:
            raise SpecError("samples", "must be an integer >= 9")
    origin = GVector.of(_vector(data.get("origin", [0, 0, 0]), "origin", 3))

    domain = None
    if form != "samples" or "domain" in data:
        if "domain" not in data:
            raise SpecError("domain", "missing")
        domain = _vector(data["domain"], "domain", 2)
        if not domain[0] < domain[1]:
            raise SpecError("domain", "needs a < b")

    constants = {}
    if form == "graph":
        variable = data.get("variable", "x")
        if not isinstance(variable, str):
            raise SpecError("variable", "must be a string")
        curve = GraphCurve(_expr(data, "y", variable), _expr(data, "z", variable), domain,
                           origin, name, variable)
    elif form == "intrinsic":
        variable = data.get("variable", "s")
        if not isinstance(variable, str):
            raise SpecError("variable", "must be a string")
        raw_constants = data.get("constants", {})
        if not isinstance(raw_constants, dict):
            raise SpecError("constants", "must be an object")
        for key in raw_constants:
            if key not in CONSTANTS:
                raise SpecError("constants", f"unknown constant {key!r}")
        constants = {k: _number(raw_constants.get(k, 0.0), f"constants.{k}") for k in CONSTANTS}
        curve = IntrinsicSpec(
            _expr(data, "kappa", variable), _expr(data, "tau", variable), domain,
            c0=constants["c0"], c1=constants["c1"], c2=constants["c2"], u0=constants["u0"],
            start_point=_vector(data.get("start_point", [0, 0]), "start_point", 2),
            start_tangent=_vector(data.get("start_tangent", [0, 0]), "start_tangent", 2),
            name=name, variable=variable,
        )
    else:
        points = data.get("points")
        if not isinstance(points, list) or not points:
            raise SpecError("points", "must be a non-empty list of [s, x, y, z] rows")
        rows = [_vector(row, "points", 4) for row in points]
        try:
            curve = SampledCurve.from_rows(rows, origin=origin, name=name)
        except ValueError as exc:
            raise SpecError("points", str(exc)) from None
        if domain is not None and (abs(curve.domain[0] - domain[0]) > 1e-12
                                   or abs(curve.domain[1] - domain[1]) > 1e-12):
            raise SpecError("domain", "does not match the first and last sample")
        domain = curve.domain
    return CurveSpec(form, name, domain, samples, origin, curve, constants, dict(data))


def load_spec(path) -> CurveSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError("<file>", f"invalid JSON ({exc.msg})", exc.colno) from None
    except OSError as exc:
        raise SpecError("<file>", f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(data)
