"""Linear algebra of the pseudo-Galilean space G_3^1.

The metric is degenerate: two vectors are compared through their first
(absolute) coordinates, and only when both of those vanish does the Lorentzian
product of the (y, z) parts take over. Scalar helpers act on :class:`GVector`;
the ``*_rows`` variants act row-wise on ``(n, 3)`` arrays and are what the
curve modules use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "GVector",
    "VectorKind",
    "Motion",
    "PGSphere",
    "scalar_product",
    "cross_product",
    "norm",
    "classify_vector",
    "apply_motion",
    "sphere_residual",
    "scalar_product_rows",
    "lorentz_rows",
    "det_rows",
]


@dataclass(frozen=True, slots=True)
class GVector:
    x: float
    y: float
    z: float

    def __add__(self, other: GVector) -> GVector:
        return GVector(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: GVector) -> GVector:
        return GVector(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> GVector:
        return GVector(-self.x, -self.y, -self.z)

    def __mul__(self, k: float) -> GVector:
        return GVector(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    @classmethod
    def of(cls, seq) -> GVector:
        x, y, z = (float(c) for c in seq)
        return cls(x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def is_isotropic(self) -> bool:
        return self.x == 0.0


class VectorKind(str, Enum):
    NON_ISOTROPIC = "non-isotropic"
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def scalar_product(u: GVector, v: GVector) -> float:
    """g(u, v): ``u.x*v.x`` unless both absolute coordinates are exactly zero."""
    if u.x != 0.0 or v.x != 0.0:
        return u.x * v.x
    return u.y * v.y - u.z * v.z


def cross_product(u: GVector, v: GVector) -> GVector:
    # cofactor expansion along the first row (0, -e2, e3)
    return GVector(0.0, u.x * v.z - u.z * v.x, u.x * v.y - u.y * v.x)


def norm(v: GVector) -> float:
    """Length of ``v``; ``|x|`` for non-isotropic vectors so the result is never negative."""
    if v.x != 0.0:
        return abs(v.x)
    return math.sqrt(abs(v.y * v.y - v.z * v.z))


def classify_vector(v: GVector, iso_eps: float = 1e-12) -> VectorKind:
    """Taxonomy of ``v``.

    ``iso_eps`` absorbs rounding in computed vectors: ``|x| <= iso_eps`` counts as
    isotropic, and ``|y^2 - z^2| <= iso_eps * (y^2 + z^2)`` as lightlike (the zero
    vector is lightlike).
    """
    if abs(v.x) > iso_eps:
        return VectorKind.NON_ISOTROPIC
    q = v.y * v.y - v.z * v.z
    if abs(q) <= iso_eps * (v.y * v.y + v.z * v.z):
        return VectorKind.LIGHTLIKE
    return VectorKind.SPACELIKE if q > 0 else VectorKind.TIMELIKE


@dataclass(frozen=True, slots=True)
class Motion:
    """Element of the six-parameter motion group.

    ``(x, y, z) -> (a + x, b + c x + y cosh(phi) + z sinh(phi),
    d + e x + y sinh(phi) + z cosh(phi))``
    """

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0
    phi: float = 0.0

    @classmethod
    def identity(cls) -> Motion:
        return cls()

    def apply(self, p: GVector) -> GVector:
        ch, sh = math.cosh(self.phi), math.sinh(self.phi)
        return GVector(
            self.a + p.x,
            self.b + self.c * p.x + p.y * ch + p.z * sh,
            self.d + self.e * p.x + p.y * sh + p.z * ch,
        )

    def apply_vector(self, v: GVector) -> GVector:
        """Induced action on difference vectors (translations a, b, d drop out)."""
        ch, sh = math.cosh(self.phi), math.sinh(self.phi)
        return GVector(v.x, self.c * v.x + v.y * ch + v.z * sh, self.e * v.x + v.y * sh + v.z * ch)

    def apply_rows(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        ch, sh = math.cosh(self.phi), math.sinh(self.phi)
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        return np.column_stack([
            self.a + x,
            self.b + self.c * x + y * ch + z * sh,
            self.d + self.e * x + y * sh + z * ch,
        ])

    def compose(self, inner: Motion) -> Motion:
        """The motion ``p -> self.apply(inner.apply(p))``."""
        ch, sh = math.cosh(self.phi), math.sinh(self.phi)
        return Motion(
            a=self.a + inner.a,
            b=self.b + self.c * inner.a + inner.b * ch + inner.d * sh,
            c=self.c + inner.c * ch + inner.e * sh,
            d=self.d + self.e * inner.a + inner.b * sh + inner.d * ch,
            e=self.e + inner.c * sh + inner.e * ch,
            phi=self.phi + inner.phi,
        )

    def inverse(self) -> Motion:
        ch, sh = math.cosh(self.phi), math.sinh(self.phi)
        # hyperbolic rotation by -phi undoes the (y, z) block
        b0, d0 = self.b - self.c * self.a, self.d - self.e * self.a
        return Motion(
            a=-self.a,
            b=-(b0 * ch - d0 * sh),
            c=-(self.c * ch - self.e * sh),
            d=-(-b0 * sh + d0 * ch),
            e=-(-self.c * sh + self.e * ch),
            phi=-self.phi,
        )


def apply_motion(m: Motion, p: GVector) -> GVector:
    return m.apply(p)


@dataclass(frozen=True, slots=True)
class PGSphere:
    center: GVector
    r2: float
    sign: int = 1

    def __post_init__(self):
        if not self.r2 > 0:
            raise ValueError("squared radius must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def residual(self, p: GVector) -> float:
        d = p - self.center
        return scalar_product(d, d) - self.sign * self.r2

    def contains(self, p: GVector, tol: float = 1e-12) -> bool:
        return abs(self.residual(p)) <= tol * max(1.0, self.r2)


def sphere_residual(s: PGSphere, p: GVector) -> float:
    return s.residual(p)


def scalar_product_rows(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Row-wise g(u_i, v_i) with the same exact branch rule as :func:`scalar_product`."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    absolute = (u[..., 0] != 0.0) | (v[..., 0] != 0.0)
    return np.where(absolute, u[..., 0] * v[..., 0], u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2])


def lorentz_rows(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Lorentzian product of the (y, z) parts, ignoring the absolute coordinate."""
    return u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def det_rows(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.linalg.det(np.stack([a, b, c], axis=-2))
