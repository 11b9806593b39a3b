"""Frenet apparatus of admissible curves alpha(s) = (s, y(s), z(s)).

Every curve representation reduces to a :class:`Jet`: samples of alpha and its
derivatives up to order four on a grid. Graph curves produce exact jets from
symbolic derivatives, reconstructed curves produce quadrature-backed jets, and
raw samples are differentiated with Richardson-extrapolated stencils.
:func:`frenet_series` turns a jet into T, N, B, epsilon, curvature, torsion and
their first derivatives.

Arc length is the absolute coordinate itself (ds = dx), so nothing here ever
reparametrizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .expr import Expr, Var, parse
from .geometry import GVector, Motion, det_rows, scalar_product_rows

__all__ = [
    "InadmissibleError",
    "EpsilonFlipError",
    "GraphCurve",
    "SampledCurve",
    "Jet",
    "FrenetSample",
    "FrenetSeries",
    "Admissibility",
    "CausalVerdict",
    "uniform_grid",
    "check_admissible",
    "frenet_series",
    "frame_at",
    "torsion_det",
    "spacelike_check",
    "frenet_ode_residuals",
    "curvatures_from_frames",
]

ADM_EPS = 1e-9


class InadmissibleError(ValueError):
    """The Frenet frame is undefined somewhere (y''^2 - z''^2 vanishes)."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class EpsilonFlipError(InadmissibleError):
    """The orientation sign changes across the grid."""


def uniform_grid(domain, n):
    """``n`` equally spaced points on ``domain``; even ``n`` is bumped to odd."""
    a, b = map(float, domain)
    if not a < b:
        raise ValueError(f"empty domain [{a}, {b}]")
    n = int(n)
    if n < 9:
        raise ValueError("grid needs at least 9 points")
    if n % 2 == 0:
        n += 1
    return np.linspace(a, b, n)


@dataclass(frozen=True)
class Jet:
    """alpha and its derivatives sampled on ``s``; ``d[k]`` has shape (n, 3)."""

    s: np.ndarray
    d: tuple
    source: str = "symbolic"

    @property
    def order(self):
        return len(self.d) - 1

    @property
    def n(self):
        return self.s.shape[0]


@dataclass(frozen=True)
class GraphCurve:
    """alpha(x) = (x, y(x), z(x)) with y, z symbolic in ``variable``."""

    y: Expr
    z: Expr
    domain: tuple
    origin: GVector = GVector(0.0, 0.0, 0.0)
    name: str = ""
    variable: str = "x"

    @classmethod
    def from_strings(cls, y, z, domain, variable="x", **kwargs):
        return cls(parse(y, variable), parse(z, variable), tuple(map(float, domain)),
                   variable=variable, **kwargs)

    def derivatives(self, k):
        """(y^(k), z^(k)) as expressions."""
        cache = self.__dict__.setdefault("_dcache", {0: (self.y, self.z)})
        if k not in cache:
            y, z = self.derivatives(k - 1)
            cache[k] = (y.diff(), z.diff())
        return cache[k]

    def jet(self, grid=None, order=4):
        s = np.atleast_1d(np.asarray(uniform_grid(self.domain, 1001) if grid is None else grid,
                                     dtype=float))
        d = []
        for k in range(order + 1):
            yk, zk = self.derivatives(k)
            x = s if k == 0 else np.full_like(s, 1.0 if k == 1 else 0.0)
            d.append(np.column_stack([x, yk.evaluate(s), zk.evaluate(s)]))
        return Jet(s, tuple(d), "symbolic")

    def moved(self, m: Motion) -> GraphCurve:
        """Image of the curve under a motion, again in graph form."""
        shifted = Var(self.variable) - m.a
        y0, z0 = self.y.subs(shifted), self.z.subs(shifted)
        ch, sh = math.cosh(m.phi), math.sinh(m.phi)
        y = m.b + m.c * shifted + ch * y0 + sh * z0
        z = m.d + m.e * shifted + sh * y0 + ch * z0
        a, b = self.domain
        return GraphCurve(y, z, (a + m.a, b + m.a), m.apply(self.origin), self.name, self.variable)


@dataclass(frozen=True)
class SampledCurve:
    """Curve known only through rows ``[s, x, y, z]`` on a uniform s-grid."""

    s: np.ndarray
    points: np.ndarray
    origin: GVector = GVector(0.0, 0.0, 0.0)
    name: str = ""

    @classmethod
    def from_rows(cls, rows, tol=1e-9, **kwargs):
        arr = np.asarray(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError("samples must be rows of [s, x, y, z]")
        if arr.shape[0] < 9:
            raise ValueError("at least 9 samples are required")
        s = arr[:, 0]
        steps = np.diff(s)
        if np.any(steps <= 0) or np.ptp(steps) > 1e-6 * steps.mean():
            raise ValueError("samples must lie on a strictly increasing uniform s-grid")
        shift = arr[:, 1] - s
        scale = max(1.0, float(np.abs(s).max()))
        if np.ptp(shift) > tol * scale:
            raise ValueError("samples are not arc-length parametrized (x - s is not constant)")
        return cls(s, arr[:, 1:].copy(), **kwargs)

    @property
    def domain(self):
        return (float(self.s[0]), float(self.s[-1]))

    def jet(self, grid=None, order=4):
        if grid is not None and (len(grid) != len(self.s) or not np.allclose(grid, self.s)):
            raise ValueError("a sampled curve can only be analysed on its own grid")
        h = (self.s[-1] - self.s[0]) / (len(self.s) - 1)
        d = [self.points]
        for k in range(1, order + 1):
            x = np.full_like(self.s, 1.0 if k == 1 else 0.0)
            yz = kernels.stencil_derivative(self.points[:, 1:], h, k)
            d.append(np.column_stack([x, yz]))
        return Jet(self.s, tuple(d), "sampled")


def _as_jet(curve, grid=None) -> Jet:
    if isinstance(curve, Jet):
        return curve
    return curve.jet(grid)


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    violations: list = field(default_factory=list)


def check_admissible(curve, grid=None, adm_eps=ADM_EPS) -> Admissibility:
    """Points where ``|y''^2 - z''^2| <= adm_eps`` (returned as data)."""
    jet = _as_jet(curve, grid)
    q = jet.d[2][:, 1] ** 2 - jet.d[2][:, 2] ** 2
    bad = np.flatnonzero(~(np.abs(q) > adm_eps))
    return Admissibility(bad.size == 0, [(float(jet.s[i]), float(q[i])) for i in bad])


@dataclass(frozen=True)
class FrenetSample:
    s: float
    T: GVector
    N: GVector
    B: GVector
    eps: int
    kappa: float
    tau: float


@dataclass(frozen=True)
class FrenetSeries:
    """Frenet apparatus on a grid (rows of T, N, B; one entry per grid point)."""

    s: np.ndarray
    alpha: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    eps: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    dkappa: np.ndarray
    dtau: Optional[np.ndarray]
    ddkappa: Optional[np.ndarray]
    source: str

    def sample(self, i) -> FrenetSample:
        return FrenetSample(float(self.s[i]), GVector.of(self.T[i]), GVector.of(self.N[i]),
                            GVector.of(self.B[i]), int(self.eps[i]), float(self.kappa[i]),
                            float(self.tau[i]))

    @property
    def is_spacelike(self):
        return bool(np.all(self.eps == -1))


def frenet_series(curve, grid=None, adm_eps=ADM_EPS, allow_flip=False) -> FrenetSeries:
    """T, N, B, epsilon, curvature and torsion on a grid.

    Raises :class:`InadmissibleError` where ``|y''^2 - z''^2| <= adm_eps`` and
    :class:`EpsilonFlipError` if epsilon is not constant (unless ``allow_flip``).
    """
    jet = _as_jet(curve, grid)
    d1, d2, d3 = jet.d[1], jet.d[2], jet.d[3]
    y2, z2, y3, z3 = d2[:, 1], d2[:, 2], d3[:, 1], d3[:, 2]
    q = y2 * y2 - z2 * z2
    bad = np.flatnonzero(~(np.abs(q) > adm_eps))
    if bad.size:
        where = ", ".join(f"s={jet.s[i]:.6g}" for i in bad[:5])
        raise InadmissibleError(
            f"curve is not admissible: y''^2 - z''^2 = 0 (|.| <= {adm_eps:g}) at {where}"
            + (" ..." if bad.size > 5 else ""),
            [(float(jet.s[i]), float(q[i])) for i in bad],
        )
    eps = np.where(q > 0, 1, -1)
    if not allow_flip and np.any(eps != eps[0]):
        flip = int(np.flatnonzero(eps != eps[0])[0])
        raise EpsilonFlipError(
            f"orientation sign flips between s={jet.s[flip - 1]:.6g} and s={jet.s[flip]:.6g}; "
            "the grid crosses a point where y''^2 - z''^2 = 0",
            [(float(jet.s[flip]), float(q[flip]))],
        )
    k2 = eps * q
    kappa = np.sqrt(k2)
    zeros = np.zeros_like(kappa)
    T = np.column_stack([np.ones_like(kappa), d1[:, 1], d1[:, 2]])
    N = np.column_stack([zeros, y2 / kappa, z2 / kappa])
    B = np.column_stack([zeros, eps * z2 / kappa, eps * y2 / kappa])
    tau = (y2 * z3 - y3 * z2) / k2
    dkappa = eps * (y2 * y3 - z2 * z3) / kappa
    dtau = ddkappa = None
    if jet.order >= 4:
        y4, z4 = jet.d[4][:, 1], jet.d[4][:, 2]
        dtau = (y2 * z4 - y4 * z2) / k2 - 2.0 * tau * dkappa / kappa
        ddkappa = (eps * (y3 * y3 - z3 * z3 + y2 * y4 - z2 * z4) - dkappa ** 2) / kappa
    return FrenetSeries(jet.s, jet.d[0], T, N, B, eps, kappa, tau, dkappa, dtau, ddkappa,
                        jet.source)


def frame_at(curve, s, adm_eps=ADM_EPS) -> FrenetSample:
    return frenet_series(curve, np.array([float(s)]), adm_eps).sample(0)


def torsion_det(curve, s, adm_eps=ADM_EPS) -> float:
    """Torsion as det(alpha', alpha'', alpha''') / kappa^2."""
    jet = _as_jet(curve, np.array([float(s)]))
    d1, d2, d3 = jet.d[1], jet.d[2], jet.d[3]
    k2 = abs(d2[0, 1] ** 2 - d2[0, 2] ** 2)
    if not k2 > adm_eps:
        raise InadmissibleError(f"curve is not admissible at s={s!r}", [(float(s), k2)])
    return float(det_rows(d1, d2, d3)[0] / k2)


@dataclass(frozen=True)
class CausalVerdict:
    kind: str  # "spacelike", "timelike" or "not uniformly causal"
    crossings: list = field(default_factory=list)

    @property
    def spacelike(self):
        return self.kind == "spacelike"


def spacelike_check(curve, grid=None) -> CausalVerdict:
    """Spacelike iff y''^2 - z''^2 < 0 on the whole grid.

    Mixed signs are reported with the subintervals ``(s_lo, s_hi)`` bracketing
    each sign change; exact zeros are skipped when locating them.
    """
    jet = _as_jet(curve, grid)
    q = jet.d[2][:, 1] ** 2 - jet.d[2][:, 2] ** 2
    sign = np.sign(q)
    if np.all(sign < 0):
        return CausalVerdict("spacelike")
    if np.all(sign > 0):
        return CausalVerdict("timelike")
    idx = np.flatnonzero(sign != 0)
    crossings = [
        (float(jet.s[i]), float(jet.s[j]))
        for i, j in zip(idx[:-1], idx[1:])
        if sign[i] != sign[j]
    ]
    return CausalVerdict("not uniformly causal", crossings)


def frenet_ode_residuals(fs: FrenetSeries, trim=0):
    """Sup-norms of T' - kN, N' - tB, B' - tN with stencil derivatives of the frames."""
    h = (fs.s[-1] - fs.s[0]) / (len(fs.s) - 1)
    sl = slice(trim, len(fs.s) - trim if trim else None)
    k, t = fs.kappa[:, None], fs.tau[:, None]
    dT = kernels.stencil_derivative(fs.T, h, 1)
    dN = kernels.stencil_derivative(fs.N, h, 1)
    dB = kernels.stencil_derivative(fs.B, h, 1)
    return {
        "T' = kN": float(np.abs(dT - k * fs.N)[sl].max()),
        "N' = tB": float(np.abs(dN - t * fs.B)[sl].max()),
        "B' = tN": float(np.abs(dB - t * fs.N)[sl].max()),
    }


def curvatures_from_frames(s, T, N, B):
    """Re-derive curvature and torsion from sampled frames.

    Reads the Frenet equations backwards, ``kappa = -g(T', N)`` and
    ``tau = g(N', B)``, with second-order central differences of the frame
    samples. Used for round-trip checks of reconstructed curves, where the
    truncation error of this rule dominates float64 rounding for every grid
    size in practical use.
    """
    h = (s[-1] - s[0]) / (len(s) - 1)
    dT = kernels.central_derivative(T, h)
    dN = kernels.central_derivative(N, h)
    dT[:, 0] = 0.0
    dN[:, 0] = 0.0
    kappa = -scalar_product_rows(dT, N)
    tau = scalar_product_rows(dN, B)
    return kappa, tau

