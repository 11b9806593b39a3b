"""Curves and position-vector coefficients from intrinsic data.

Given curvature kappa(s) and torsion tau(s):

* :func:`reconstruct_curve` builds the frame from theta = int tau and the curve
  by two cumulative Simpson quadratures;
* :func:`integrate_m_system` and :func:`m_closed_form` produce the coefficients
  (m0, m1, m2) of the position vector in the Frenet frame, once by RK4 and
  once by variation of parameters, so that each checks the other;
* :func:`third_order_residual` evaluates the third-order vector ODE satisfied
  by the tangent field.

All quadratures run on uniform grids with an odd number of points.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .expr import Expr, parse
from .frenet import (ADM_EPS, FrenetSeries, Jet, _as_jet, curvatures_from_frames,
                     frenet_series, uniform_grid)
from .geometry import GVector

__all__ = [
    "ZeroTorsionError",
    "ZeroCurvatureError",
    "NumericOverflowError",
    "IntrinsicSpec",
    "ReconstructedCurve",
    "reconstruct_curve",
    "round_trip",
    "m_system_rhs",
    "integrate_m_system",
    "MClosedForm",
    "m_closed_form",
    "ThirdOrderResidual",
    "third_order_residual",
]

TAU_EPS = 1e-9
EXP_LIMIT = 300.0


class ZeroTorsionError(ValueError):
    pass


class ZeroCurvatureError(ValueError):
    pass


class NumericOverflowError(ArithmeticError):
    pass


@dataclass(frozen=True)
class IntrinsicSpec:
    """Intrinsic description of a curve.

    ``c0, c1, c2`` are the free constants of the coefficient functions, ``u0``
    the constant added to int tau. ``start_point`` and ``start_tangent`` are
    the (y, z) parts of alpha and T at the start of the domain.
    """

    kappa: Expr
    tau: Expr
    domain: tuple
    c0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    u0: float = 0.0
    start_point: tuple = (0.0, 0.0)
    start_tangent: tuple = (0.0, 0.0)
    name: str = ""
    variable: str = "s"

    @classmethod
    def from_strings(cls, kappa, tau, domain, variable="s", **kwargs):
        return cls(parse(kappa, variable), parse(tau, variable), tuple(map(float, domain)),
                   variable=variable, **kwargs)

    def grid(self, n):
        return uniform_grid(self.domain, n)


@dataclass(frozen=True)
class ReconstructedCurve:
    spec: IntrinsicSpec
    s: np.ndarray
    theta: np.ndarray
    alpha: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    derivs: dict = field(repr=False)

    @property
    def domain(self):
        return (float(self.s[0]), float(self.s[-1]))

    @property
    def origin(self):
        return GVector(0.0, 0.0, 0.0)

    @property
    def name(self):
        return self.spec.name

    def rows(self):
        """(s, x, y, z) rows."""
        return np.column_stack([self.s, self.alpha])

    def jet(self, grid=None, order=4):
        """Quadrature-backed jet: orders 0-1 from quadrature, 2-4 from theta.

        Derivatives of order >= 2 are exact given theta: alpha'' = kN,
        alpha''' = k'N + k t B and alpha'''' = (k'' + k t^2) N + (2 k' t + k t') B.
        """
        if grid is not None and (len(grid) != len(self.s) or not np.allclose(grid, self.s)):
            raise ValueError("a reconstructed curve can only be analysed on its own grid")
        k, t = self.kappa[:, None], self.tau[:, None]
        dk, ddk, dt = (self.derivs[key][:, None] for key in ("dkappa", "ddkappa", "dtau"))
        d = [
            self.alpha,
            self.T,
            k * self.N,
            dk * self.N + k * t * self.B,
            (ddk + k * t * t) * self.N + (2.0 * dk * t + k * dt) * self.B,
        ]
        return Jet(self.s, tuple(d[: order + 1]), "quadrature")

    def frames(self) -> FrenetSeries:
        return FrenetSeries(self.s, self.alpha, self.T, self.N, self.B,
                            np.full(len(self.s), -1), self.kappa, self.tau,
                            self.derivs["dkappa"], self.derivs["dtau"], self.derivs["ddkappa"],
                            "quadrature")


def reconstruct_curve(spec: IntrinsicSpec, n: int = 2001) -> ReconstructedCurve:
    """Spacelike curve with prescribed curvature and torsion.

    theta(s) = u0 + int_a^s tau, N = (0, -sinh theta, cosh theta),
    B = (0, -cosh theta, sinh theta), T = (1, -int k sinh theta, int k cosh theta)
    and alpha = (s, int T_y, int T_z), every integral by cumulative Simpson.
    """
    s = spec.grid(n)
    h = s[1] - s[0]
    kappa = spec.kappa.evaluate(s)
    tau = spec.tau.evaluate(s)
    theta = spec.u0 + kernels.cumulative_simpson(tau, h)
    if np.abs(theta).max() > EXP_LIMIT:
        raise NumericOverflowError("integrated torsion exceeds 300; hyperbolic functions overflow")
    sh, ch = np.sinh(theta), np.cosh(theta)
    zeros, ones = np.zeros_like(s), np.ones_like(s)
    ty0, tz0 = spec.start_tangent
    py0, pz0 = spec.start_point
    Ty = ty0 - kernels.cumulative_simpson(kappa * sh, h)
    Tz = tz0 + kernels.cumulative_simpson(kappa * ch, h)
    alpha = np.column_stack([s, py0 + kernels.cumulative_simpson(Ty, h),
                             pz0 + kernels.cumulative_simpson(Tz, h)])
    T = np.column_stack([ones, Ty, Tz])
    N = np.column_stack([zeros, -sh, ch])
    B = np.column_stack([zeros, -ch, sh])
    dk = spec.kappa.diff()
    derivs = {
        "dkappa": dk.evaluate(s),
        "ddkappa": dk.diff().evaluate(s),
        "dtau": spec.tau.diff().evaluate(s),
    }
    return ReconstructedCurve(spec, s, theta, alpha, T, N, B, kappa, tau, derivs)


def round_trip(spec: IntrinsicSpec, n: int = 2001):
    """Reconstruct, re-derive curvature and torsion from the frames, compare.

    Returns ``(kappa_error, tau_error)`` as sup-norms over the grid.
    """
    rc = reconstruct_curve(spec, n)
    kappa, tau = curvatures_from_frames(rc.s, rc.T, rc.N, rc.B)
    return float(np.abs(kappa - rc.kappa).max()), float(np.abs(tau - rc.tau).max())


# --- position-vector coefficients -----------------------------------------------

def m_system_rhs(state, s, kappa, tau, c0=0.0):
    """Right-hand side of the coefficient system with m0 = s + c0 substituted."""
    m1, m2 = state
    return (-kappa * (s + c0) - tau * m2, -tau * m1)


def integrate_m_system(spec: IntrinsicSpec, n: int, m1_start: float, m2_start: float):
    """RK4 with the grid spacing as fixed step. Returns ``(s, m0, m1, m2)``."""
    s = spec.grid(n)
    h = s[1] - s[0]
    mid = s[:-1] + 0.5 * h
    m1, m2 = kernels.rk4_msystem(
        s[0], h,
        spec.kappa.evaluate(s), spec.kappa.evaluate(mid),
        spec.tau.evaluate(s), spec.tau.evaluate(mid),
        spec.c0, m1_start, m2_start,
    )
    return s, s + spec.c0, m1, m2


def _m_residuals(s, kappa, tau, m0, m1, m2):
    h = s[1] - s[0]
    d1 = kernels.stencil_derivative(m1, h, 1)
    d2 = kernels.stencil_derivative(m2, h, 1)
    return (float(np.abs(d1 + kappa * m0 + tau * m2).max()),
            float(np.abs(d2 + tau * m1).max()))


@dataclass(frozen=True)
class MClosedForm:
    s: np.ndarray
    t: np.ndarray
    m0: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    variants: dict


def _signed_torsion_check(tau, tau_eps):
    if np.any(np.abs(tau) < tau_eps):
        raise ZeroTorsionError(f"torsion vanishes (|tau| < {tau_eps:g}) on the domain")
    if np.any(np.sign(tau) != np.sign(tau[0])):
        raise ZeroTorsionError("torsion changes sign; t = int tau is not monotone")


def m_closed_form(spec: IntrinsicSpec, n: int = 2001, tau_eps: float = TAU_EPS) -> MClosedForm:
    """Coefficients m1, m2 by variation of parameters in t = u0 + int tau.

    With f = kappa (s + c0) and the cumulative integrals
    J1 = int f/2 e^{-t} ds, J2 = int f/2 e^{t} ds (both from the start of the
    domain; the Jacobian dt = tau ds cancels the 1/tau of the t-form)::

        m2 = c1 e^t - c2 e^-t + e^t J1 - e^-t J2
        m1 = -dm2/dt = -(c1 e^t + c2 e^-t + e^t J1 + e^-t J2)

    ``variants`` maps each alternative reading of the closed form to its
    residuals in the coefficient system (sup-norms of the two equations).
    """
    s = spec.grid(n)
    h = s[1] - s[0]
    kappa = spec.kappa.evaluate(s)
    tau = spec.tau.evaluate(s)
    _signed_torsion_check(tau, tau_eps)
    t = spec.u0 + kernels.cumulative_simpson(tau, h)
    if np.abs(t).max() > EXP_LIMIT:
        raise NumericOverflowError("|int tau| exceeds 300; exponentials overflow")
    m0 = s + spec.c0
    ep, em = np.exp(t), np.exp(-t)

    def build(weight, flipped=False):
        f = kappa * m0 * weight / 2.0
        j1 = kernels.cumulative_simpson(f * em, h)
        j2 = kernels.cumulative_simpson(f * ep, h)
        if flipped:
            m2 = em * (spec.c1 * ep * ep + ep * ep * j1 + j2 - spec.c2)
            m1 = em * (spec.c1 * ep * ep + ep * ep * j1 - j2 + spec.c2)
        else:
            m2 = spec.c1 * ep - spec.c2 * em + ep * j1 - em * j2
            m1 = -(spec.c1 * ep + spec.c2 * em + ep * j1 + em * j2)
        return m1, m2

    m1, m2 = build(1.0)
    variants = {"s_form": _m_residuals(s, kappa, tau, m0, m1, m2)}
    alt = build(1.0 / tau)
    variants["s_form_over_tau"] = _m_residuals(s, kappa, tau, m0, *alt)
    alt = build(1.0, flipped=True)
    variants["flipped_signs"] = _m_residuals(s, kappa, tau, m0, *alt)
    return MClosedForm(s, t, m0, m1, m2, variants)


# --- third-order tangent equation --------------------------------------------------

@dataclass(frozen=True)
class ThirdOrderResidual:
    s: np.ndarray
    residual: np.ndarray
    sup: tuple
    flipped_sup: tuple

    @property
    def max(self):
        return max(self.sup)


def third_order_residual(curve, grid=None, adm_eps=ADM_EPS, tau_eps=TAU_EPS) -> ThirdOrderResidual:
    """Residual of the third-order linear ODE satisfied by T.

    The coefficients follow from N = T'/k, B = N'/t and B' = t N::

        (1/(t k)) T''' + [2 (1/t)(1/k)' + (1/t)'(1/k)] T''
                       + [(1/t)(1/k)'' + (1/t)'(1/k)' - t/k] T' = 0

    ``flipped_sup`` evaluates the variant with the opposite sign on both
    (1/t)' terms, kept as a diagnostic; it does not vanish unless tau is constant.
    """
    jet = _as_jet(curve, grid)
    if jet.order < 4:
        raise ValueError("the third-order residual needs derivatives up to order four")
    fs = frenet_series(jet, adm_eps=adm_eps)
    k, t = fs.kappa, fs.tau
    if np.any(k < adm_eps):
        raise ZeroCurvatureError("curvature vanishes on the grid")
    if np.any(np.abs(t) < tau_eps):
        raise ZeroTorsionError(f"torsion vanishes (|tau| < {tau_eps:g}); 1/tau is undefined")
    dk, ddk, dt = fs.dkappa, fs.ddkappa, fs.dtau
    ik, it = 1.0 / k, 1.0 / t
    dik = -dk / k ** 2
    ddik = (2.0 * dk ** 2 - k * ddk) / k ** 3
    dit = -dt / t ** 2
    T1, T2, T3 = jet.d[2], jet.d[3], jet.d[4]
    a = (it * ik)[:, None]
    b = (2.0 * it * dik + dit * ik)[:, None]
    c = (it * ddik + dit * dik - t * ik)[:, None]
    res = a * T3 + b * T2 + c * T1
    bp = (2.0 * it * dik - dit * ik)[:, None]
    cp = (it * (ddik - t ** 2 * ik) - dit * dik)[:, None]
    flipped = a * T3 + bp * T2 + cp * T1
    sup = tuple(float(v) for v in np.abs(res).max(axis=0))
    psup = tuple(float(v) for v in np.abs(flipped).max(axis=0))
    return ThirdOrderResidual(jet.s, res, sup, psup)
