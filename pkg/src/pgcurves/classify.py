"""Frenet coefficients of the position vector and the curve classes built on them.

Every admissible curve decomposes as alpha - origin = m0 T + m1 N + m2 B.
Because s is the absolute coordinate, m0 = s + c0 always; the interesting
information is in q = m2^2 - m1^2, the signed squared length of the normal
component, and in its ratio to m0^2.

Verdicts are tri-state: ``True`` when the statistic is within the threshold,
``False`` beyond ten times the threshold and ``"indeterminate"`` in between.
Everything depends on the origin, which is an explicit argument.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import kernels
from .config import DEFAULT, Tolerances
from .frenet import FrenetSeries, frenet_ode_residuals, frenet_series, uniform_grid
from .geometry import GVector, lorentz_rows
from .reconstruct import EXP_LIMIT, NumericOverflowError, ZeroTorsionError, third_order_residual

__all__ = [
    "INDETERMINATE",
    "FrameDegenerateError",
    "DegenerateNormalError",
    "Decomposition",
    "decompose",
    "tri_state",
    "ConstantRatio",
    "detect_constant_ratio",
    "constant_ratio_ode_residual",
    "TConstant",
    "detect_T_constant",
    "NConstant",
    "detect_N_constant",
    "n_constant_generator",
    "Sphere",
    "sphere_fit",
    "Circle",
    "circle_check",
    "search_origin",
    "ResidualRow",
    "residual_table",
    "ClassificationReport",
    "classify",
]

INDETERMINATE = "indeterminate"
Verdict = Union[bool, str]


class FrameDegenerateError(ValueError):
    pass


class DegenerateNormalError(ValueError):
    pass


def tri_state(stat: float, threshold: float) -> Verdict:
    if not np.isfinite(stat):
        return False
    if stat <= threshold:
        return True
    if stat <= 10.0 * threshold:
        return INDETERMINATE
    return False


def _relstd(v):
    mean = float(np.mean(v))
    if mean == 0.0:
        return float("inf") if np.any(v != 0) else 0.0
    return float(np.std(v) / abs(mean))


def _frames(curve, grid=None, tol: Tolerances = DEFAULT) -> FrenetSeries:
    if isinstance(curve, FrenetSeries):
        return curve
    return frenet_series(curve, grid, adm_eps=tol.adm_eps)


def _derivative(fs, v):
    h = (fs.s[-1] - fs.s[0]) / (len(fs.s) - 1)
    return kernels.stencil_derivative(v, h, 1)


# --- decomposition ----------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    s: np.ndarray
    m0: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    origin: GVector
    reconstruction_error: float

    @property
    def q(self):
        """Signed squared normal length m2^2 - m1^2 (B spacelike, N timelike)."""
        return self.m2 ** 2 - self.m1 ** 2

    @property
    def tangential_norm2(self):
        return self.m0 ** 2

    @property
    def normal_norm2(self):
        return np.abs(self.q)


def decompose(curve, origin=GVector(0.0, 0.0, 0.0), grid=None, tol: Tolerances = DEFAULT
              ) -> Decomposition:
    """Coefficients of alpha - origin in the Frenet frame.

    ``curve`` may be anything with a jet or an already computed
    :class:`FrenetSeries`. m0 is the absolute coordinate of alpha - origin,
    and the isotropic remainder r gives m1 = -g(r, N), m2 = g(r, B).
    """
    fs = _frames(curve, grid, tol)
    origin = GVector.of(origin)
    gnn = lorentz_rows(fs.N, fs.N)
    bad = np.abs(gnn + 1.0) > tol.frame_tol
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise FrameDegenerateError(f"g(N, N) = {gnn[i]:.6g} != -1 at s={fs.s[i]:.6g}; "
                                   "the curve is not spacelike there")
    rel = fs.alpha - origin.as_array()
    m0 = rel[:, 0]
    r = rel - m0[:, None] * fs.T
    m1 = -lorentz_rows(r, fs.N)
    m2 = lorentz_rows(r, fs.B)
    back = m0[:, None] * fs.T + m1[:, None] * fs.N + m2[:, None] * fs.B
    err = float(np.abs(back - rel).max())
    return Decomposition(fs.s, m0, m1, m2, origin, err)


# --- constant ratio ----------------------------------------------------------------

@dataclass(frozen=True)
class ConstantRatio:
    verdict: Verdict
    ratio: float
    relative_deviation: float


def detect_constant_ratio(d: Decomposition, threshold: float = 1e-6,
                          degenerate: float = 1e-12) -> ConstantRatio:
    """Is m0^2 / (m2^2 - m1^2) constant? The fitted ratio is its mean."""
    q = d.q
    if np.any(np.abs(q) < degenerate):
        i = int(np.flatnonzero(np.abs(q) < degenerate)[0])
        raise DegenerateNormalError(f"normal component vanishes at s={d.s[i]:.6g}; "
                                    "the ratio is undefined")
    rho = d.m0 ** 2 / q
    dev = _relstd(rho)
    return ConstantRatio(tri_state(dev, threshold), float(np.mean(rho)), dev)


def constant_ratio_ode_residual(curve, ratio: float, c0: float = 0.0, grid=None,
                                tol: Tolerances = DEFAULT) -> np.ndarray:
    """Residual of the curvature ODE characterising constant-ratio curves.

    Q = (k' - ratio k^3 (s + c0)) / (ratio k^2 t) must satisfy
    Q' = -t / (ratio k). Q' is assembled from k, k', k'', t, t' by the
    quotient rule, so no numerical differentiation is involved.
    """
    fs = _frames(curve, grid, tol)
    k, t, dk, ddk, dt = fs.kappa, fs.tau, fs.dkappa, fs.ddkappa, fs.dtau
    if dt is None or ddk is None:
        raise ValueError("the constant-ratio ODE needs derivatives up to order four")
    if np.any(np.abs(t) < tol.tau_eps):
        raise ZeroTorsionError("torsion vanishes on the grid")
    m0 = fs.s + c0
    p = dk - ratio * k ** 3 * m0
    dp = ddk - 3.0 * ratio * k ** 2 * dk * m0 - ratio * k ** 3
    den = ratio * k ** 2 * t
    dden = ratio * (2.0 * k * dk * t + k ** 2 * dt)
    dq = (dp * den - p * dden) / den ** 2
    return dq + t / (ratio * k)


# --- T-constant -------------------------------------------------------------------

@dataclass(frozen=True)
class TConstant:
    verdict: Verdict
    slope: float
    intercept: float
    note: str = ""


def detect_T_constant(d: Decomposition, slope_tol: float = 1e-9) -> TConstant:
    """Affine fit of m0. Arc-length input always has slope 1, hence never T-constant."""
    slope, intercept = np.polyfit(d.s, d.m0, 1)
    verdict = tri_state(abs(slope), slope_tol)
    note = "" if verdict is True else "slope 1: spacelike curves are never T-constant"
    return TConstant(verdict, float(slope), float(intercept), note)


# --- N-constant -------------------------------------------------------------------

@dataclass(frozen=True)
class NConstant:
    verdict: Verdict
    kind: Optional[str]
    constant: float
    relative_deviation: float
    scale: float


def detect_N_constant(d: Decomposition, threshold: float = 1e-6) -> NConstant:
    """Is q = m2^2 - m1^2 constant?

    First kind: sup|q| <= threshold * scale, with scale = max(m1^2 + m2^2).
    Second kind: relative deviation of q within threshold and |mean q| above
    threshold * scale. ``constant`` is the signed mean of q.
    """
    q = d.q
    scale = float(np.max(d.m1 ** 2 + d.m2 ** 2))
    if scale == 0.0:
        return NConstant(True, "first", 0.0, 0.0, 0.0)
    mean = float(np.mean(q))
    first = float(np.abs(q).max()) / scale
    verdict = tri_state(first, threshold)
    if verdict is True:
        return NConstant(True, "first", mean, _relstd(q) if mean else 0.0, scale)
    dev = _relstd(q)
    second = tri_state(dev, threshold) if abs(mean) > threshold * scale else False
    if second is False and verdict is INDETERMINATE:
        return NConstant(INDETERMINATE, "first", mean, dev, scale)
    return NConstant(second, "second" if second is not False else None, mean, dev, scale)


@dataclass(frozen=True)
class GeneratorSeries:
    s: np.ndarray
    u: np.ndarray
    m1: np.ndarray
    m2: np.ndarray


def n_constant_generator(tau, c4: float, c5: float, domain, n: int = 1001) -> GeneratorSeries:
    """Coefficient pair of an N-constant curve for a given torsion.

    u = int tau + c5, m2 = e^u / 4 - c4 e^-u and m1 = m2 - e^u / 2, so that
    m2^2 - m1^2 = -c4 identically and m2' = -tau m1 (the coefficient system).
    """
    s = uniform_grid(domain, n)
    tv = tau.evaluate(s) if hasattr(tau, "evaluate") else np.broadcast_to(
        np.asarray(tau(s) if callable(tau) else tau, dtype=float), s.shape)
    u = c5 + kernels.cumulative_simpson(np.asarray(tv, dtype=float), s[1] - s[0])
    if np.abs(u).max() > EXP_LIMIT:
        raise NumericOverflowError("|u| exceeds 300; exponentials overflow")
    ep, em = np.exp(u), np.exp(-u)
    m2 = 0.25 * ep - c4 * em
    m1 = m2 - 0.5 * ep
    return GeneratorSeries(s, u, m1, m2)


# --- spheres ----------------------------------------------------------------------

@dataclass(frozen=True)
class Sphere:
    verdict: Verdict
    center: tuple
    r2: float
    sign: int
    center_deviation: float
    distance_deviation: float
    fitted_scale: float
    fitted_c4: float
    reciprocal_curvature_residual: float
    binormal_residual: float


def sphere_fit(curve, grid=None, tol: Tolerances = DEFAULT) -> Sphere:
    """Fit a pseudo-Galilean sphere through the osculating-sphere centers.

    Candidate centers are c = alpha - (1/k) N - (k'/(k^2 t)) B. The absolute
    coordinate of alpha - c is s minus a constant and can never have constant
    length, so constancy of the center and of the distance is judged on the
    isotropic (y, z) part; ``center[0]`` is reported as 0.

    Also reported: how well the coefficients 1/k = m1 and k'/(k^2 t) = m2
    fit the N-constant family m2 = A e^U / 4 - c4 e^-U / A, m1 = m2 - A e^U / 2
    with U = int t. ``fitted_scale`` is A = e^{c5}.
    """
    fs = _frames(curve, grid, tol)
    k, t, dk = fs.kappa, fs.tau, fs.dkappa
    if np.any(np.abs(t) < tol.tau_eps):
        raise ZeroTorsionError("torsion vanishes on the grid; sphere centers are undefined")
    a1 = 1.0 / k
    a2 = dk / (k ** 2 * t)
    centers = fs.alpha - a1[:, None] * fs.N - a2[:, None] * fs.B
    iso = centers[:, 1:]
    mean = iso.mean(axis=0)
    spread = float(np.abs(iso - mean).max() / max(1.0, float(np.abs(mean).max())))
    rel = fs.alpha.copy()
    rel[:, 1:] -= mean
    g = lorentz_rows(rel, rel)
    dist_dev = _relstd(g)
    gmean = float(np.mean(g))
    threshold = tol.constancy(fs.source)
    verdict = tri_state(max(spread, dist_dev), threshold)

    h = fs.s[1] - fs.s[0]
    U = kernels.cumulative_simpson(t, h)
    with np.errstate(over="ignore"):
        scale = float(np.mean(2.0 * (a2 - a1) * np.exp(-U)))
        c4 = float(np.mean(-(a1 + a2) * scale * np.exp(U) / 2.0))
        base = 0.25 * scale * np.exp(U) - c4 * np.exp(-U) / scale if scale else np.full_like(U, np.inf)
        r_line2 = float(np.abs(base - 0.5 * scale * np.exp(U) - a1).max())
        r_line3 = float(np.abs(base - a2).max())
    return Sphere(verdict, (0.0, float(mean[0]), float(mean[1])), abs(gmean),
                  1 if gmean >= 0 else -1, spread, dist_dev, scale, c4, r_line2, r_line3)


# --- circles ----------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    verdict: bool
    kappa_deviation: float
    tau_sup: float
    q_min: float
    q_max: float
    q_mean: float
    q_relative_deviation: float


def circle_check(curve, d: Decomposition, grid=None, tol: Tolerances = DEFAULT) -> Circle:
    """Constant curvature and vanishing torsion; q statistics are attached as data only."""
    fs = _frames(curve, grid, tol)
    kdev = _relstd(fs.kappa)
    tsup = float(np.abs(fs.tau).max())
    q = d.q
    verdict = bool(kdev <= tol.circle_kappa and tsup <= tol.circle_tau)
    return Circle(verdict, kdev, tsup, float(q.min()), float(q.max()), float(q.mean()),
                  _relstd(q))


# --- origin search ----------------------------------------------------------------

def search_origin(curve, center=GVector(0.0, 0.0, 0.0), radius=None, points=9, grid=None,
                  tol: Tolerances = DEFAULT) -> GVector:
    """Origin on a coarse cube around ``center`` minimising the variance of q."""
    fs = _frames(curve, grid, tol)
    center = GVector.of(center)
    if radius is None:
        radius = float(np.ptp(fs.alpha, axis=0).max()) or 1.0
    offsets = np.linspace(-radius, radius, points)
    best, best_var = center, float(np.var(decompose(fs, center, tol=tol).q))
    for dx, dy, dz in itertools.product(offsets, repeat=3):
        o = center + GVector(dx, dy, dz)
        var = float(np.var(decompose(fs, o, tol=tol).q))
        if var < best_var - 1e-15 * max(1.0, best_var):
            best, best_var = o, var
    return best


# --- residual table and report ------------------------------------------------------

@dataclass(frozen=True)
class ResidualRow:
    identity: str
    residual: Optional[float]
    threshold: float
    status: str  # "pass", "fail" or "skip"
    note: str = ""


def _row(name, value, threshold, note=""):
    status = "pass" if value <= threshold else "fail"
    return ResidualRow(name, float(value), threshold, status, note)


def _skip(name, threshold, note):
    return ResidualRow(name, None, threshold, "skip", note)


def residual_table(curve, d: Decomposition, fs: FrenetSeries, ratio: Optional[float],
                   n_const: Optional[NConstant], tol: Tolerances = DEFAULT, trim: int = 0):
    """Sup-norm residuals of every identity that applies to the curve."""
    rows = []
    ode_thr = tol.frenet_ode_sampled if fs.source == "sampled" else tol.frenet_ode
    for name, value in frenet_ode_residuals(fs, trim).items():
        rows.append(_row(f"Frenet equation {name}", value, ode_thr))
    sl = slice(trim, len(fs.s) - trim if trim else None)
    d1 = _derivative(fs, d.m1)
    d2 = _derivative(fs, d.m2)
    r1 = np.abs(d1 + fs.kappa * d.m0 + fs.tau * d.m2)[sl].max()
    r2 = np.abs(d2 + fs.tau * d.m1)[sl].max()
    rows.append(_row("coefficient system m1' + k m0 + t m2 = 0", r1, tol.m_system))
    rows.append(_row("coefficient system m2' + t m1 = 0", r2, tol.m_system))

    torsion_free = bool(np.any(np.abs(fs.tau) < tol.tau_eps))
    name3 = "third-order tangent equation"
    thr3 = tol.third_order(fs.source)
    if torsion_free:
        rows.append(_skip(name3, thr3, "torsion vanishes"))
    elif isinstance(curve, FrenetSeries):
        rows.append(_skip(name3, thr3, "needs the curve, not only its frames"))
    else:
        res = third_order_residual(curve, fs.s if fs.source == "symbolic" else None,
                                   adm_eps=tol.adm_eps, tau_eps=tol.tau_eps)
        rows.append(_row(name3, float(np.abs(res.residual[sl]).max()), thr3))

    name_ode = "constant-ratio curvature ODE (fitted ratio)"
    name_id = "constant-ratio identity m2 m2' - m1 m1' = m0 / ratio"
    if ratio is None:
        rows.append(_skip(name_ode, tol.ratio_ode, "ratio undefined"))
        rows.append(_skip(name_id, tol.ratio_identity, "ratio undefined"))
    else:
        half_dq = d.m2 * d2 - d.m1 * d1
        rows.append(_row(name_id, np.abs(half_dq - d.m0 / ratio)[sl].max(), tol.ratio_identity))
        if torsion_free:
            rows.append(_skip(name_ode, tol.ratio_ode, "torsion vanishes"))
        else:
            c0 = -d.origin.x
            res = constant_ratio_ode_residual(fs, ratio, c0, tol=tol)
            rows.append(_row(name_ode, np.abs(res[sl]).max(), tol.ratio_ode))

    name_identity = "N-constant identity m2 m2' - m1 m1' = 0"
    name_second = "N-constant second kind m2' - t m1 = 0"
    if n_const is None or n_const.verdict is not True:
        rows.append(_skip(name_identity, tol.n_constant_identity, "curve is not N-constant"))
        rows.append(_skip(name_second, tol.n_constant_identity, "curve is not N-constant"))
    else:
        scale = max(1.0, n_const.scale)
        identity = np.abs(d.m2 * d2 - d.m1 * d1)[sl].max() / scale
        rows.append(_row(name_identity, identity, tol.n_constant_identity))
        if n_const.kind == "second":
            rows.append(_row(name_second, np.abs(d2 - fs.tau * d.m1)[sl].max(),
                             tol.n_constant_identity))
        else:
            rows.append(_skip(name_second, tol.n_constant_identity, "first kind"))
    return rows


@dataclass(frozen=True)
class ClassificationReport:
    origin: tuple
    source: str
    constant_ratio: Optional[ConstantRatio]
    t_constant: TConstant
    n_constant: NConstant
    spherical: Optional[Sphere]
    circle: Circle
    residuals: list
    warnings: list = field(default_factory=list)
    decomposition: Optional[Decomposition] = field(default=None, repr=False, compare=False)
    frames: Optional[FrenetSeries] = field(default=None, repr=False, compare=False)


def classify(curve, origin=GVector(0.0, 0.0, 0.0), grid=None, tol: Tolerances = DEFAULT,
             trim: int = 0) -> ClassificationReport:
    """Run every criterion on one curve. The curve must be spacelike."""
    fs = _frames(curve, grid, tol)
    d = decompose(fs, origin, tol=tol)
    threshold = tol.constancy(fs.source)
    warnings = []

    try:
        cr = detect_constant_ratio(d, threshold, tol.degenerate_normal)
    except DegenerateNormalError as exc:
        cr = None
        warnings.append(f"constant-ratio test skipped: {exc}")
    tc = detect_T_constant(d, tol.slope_tol)
    nc = detect_N_constant(d, threshold)
    try:
        sp = sphere_fit(fs, tol=tol)
    except ZeroTorsionError as exc:
        sp = None
        warnings.append(f"sphere test skipped: {exc}")
    ci = circle_check(fs, d, tol=tol)

    for label, verdict in (("constant-ratio", cr and cr.verdict), ("N-constant", nc.verdict),
                           ("spherical", sp and sp.verdict)):
        if verdict == INDETERMINATE:
            warnings.append(f"{label} verdict is indeterminate: the statistic lies between the "
                            "threshold and ten times the threshold")
    if ci.verdict:
        warnings.append(
            "circle (constant curvature, zero torsion): the claim that circles are N-constant "
            f"of the second kind is not confirmed; q ranges over [{ci.q_min:.6g}, {ci.q_max:.6g}]"
            + (" and is not constant" if nc.verdict is not True else ""))
    if nc.verdict is True and nc.kind == "second":
        warnings.append(f"N-constant constant reported as the signed value m2^2 - m1^2 = "
                        f"{nc.constant:.6g}; sign conventions for it differ")
    if sp is not None and sp.verdict is True:
        warnings.append("sphere judged on the isotropic part: the absolute-coordinate condition "
                        "s + c0 = 0 cannot hold on an interval")

    rows = residual_table(curve, d, fs, cr.ratio if cr else None, nc, tol, trim)
    return ClassificationReport(tuple(d.origin), fs.source, cr, tc, nc, sp, ci, rows, warnings,
                                d, fs)
