"""Tolerances and grid defaults, kept in one record.

The CLI overrides fields from a JSON file (``--config``); nothing is read
from the environment.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    iso_eps: float = 1e-12
    adm_eps: float = 1e-9
    tau_eps: float = 1e-9
    frame_tol: float = 1e-6
    degenerate_normal: float = 1e-12
    # relative standard deviation for "is constant" decisions
    constancy_symbolic: float = 1e-6
    constancy_numeric: float = 1e-3
    slope_tol: float = 1e-9
    circle_kappa: float = 1e-6
    circle_tau: float = 1e-9
    # sup-norm thresholds for the residual table
    frenet_ode: float = 1e-6
    frenet_ode_sampled: float = 1e-4
    m_system: float = 1e-5
    third_order_symbolic: float = 1e-6
    third_order_numeric: float = 1e-5
    ratio_ode: float = 1e-6
    ratio_identity: float = 1e-5
    n_constant_identity: float = 1e-5
    grid_n: int = 1001

    def constancy(self, source: str) -> float:
        return self.constancy_symbolic if source == "symbolic" else self.constancy_numeric

    def third_order(self, source: str) -> float:
        return self.third_order_symbolic if source == "symbolic" else self.third_order_numeric

    @classmethod
    def from_mapping(cls, data: dict) -> Tolerances:
        known = {f.name: f.type for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise KeyError(f"unknown config field(s): {', '.join(unknown)}")
        base = cls()
        values = {}
        for key, value in data.items():
            current = getattr(base, key)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"config field {key!r} must be a number")
            values[key] = int(value) if isinstance(current, int) else float(value)
        return replace(base, **values)

    @classmethod
    def load(cls, path) -> Tolerances:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise TypeError("config file must contain a JSON object")
        return cls.from_mapping(data)

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
