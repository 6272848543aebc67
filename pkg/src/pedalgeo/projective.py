"""Homogeneous-coordinate primitives for the real projective plane.

Points and lines are triples stored with unit Euclidean norm and the first
nonzero component positive, so two representations of the same object compare
equal component-wise. A point ``(x, y, w)`` with ``w == 0`` is a direction; the
line ``(0, 0, 1)`` is the line at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from .errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateQuadruple,
    InfiniteLine,
    NonFinite,
    NotCollinear,
    PointAtInfinity,
    ZeroVector,
)

Vec3 = Tuple[float, float, float]

# components below this magnitude (on unit-norm triples) count as zero
_ZERO = 1e-12


@dataclass(frozen=True)
class Tolerance:
    """Residual thresholds; ``scale`` is the configuration diameter."""

    abs_tol: float = 1e-7
    exact_tol: float = 1e-12
    scale: float = 1.0

    def __post_init__(self):
        if not (0 < self.exact_tol <= self.abs_tol):
            raise ValueError("need 0 < exact_tol <= abs_tol")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def with_scale(self, scale: float) -> Tolerance:
        return Tolerance(self.abs_tol, self.exact_tol, scale)

    def with_abs(self, abs_tol: float) -> Tolerance:
        return Tolerance(abs_tol, min(self.exact_tol, abs_tol), self.scale)


DEFAULT_TOL = Tolerance()


def normalize3(v: Sequence[float]) -> Vec3:
    x, y, w = (float(c) for c in v)
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(w)):
        raise NonFinite(f"non-finite coordinates {v!r}")
    n = math.sqrt(x * x + y * y + w * w)
    if n == 0.0 or not math.isfinite(n):
        raise ZeroVector(f"cannot normalize {v!r}")
    x, y, w = x / n, y / n, w / n
    for c in (x, y, w):
        if abs(c) > _ZERO:
            if c < 0:
                x, y, w = -x, -y, -w
            break
    return (x + 0.0, y + 0.0, w + 0.0)


def cross(u: Sequence[float], v: Sequence[float]) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def norm(u: Sequence[float]) -> float:
    return math.sqrt(dot(u, u))


def det3(u: Sequence[float], v: Sequence[float], w: Sequence[float]) -> float:
    return dot(u, cross(v, w))


class _Triple:
    __slots__ = ()

    coords: Vec3

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def same_as(self, other: _Triple, tol: float = _ZERO) -> bool:
        """Equality up to scale (and sign)."""
        return norm(cross(self.coords, other.coords)) <= tol


@dataclass(frozen=True, init=False)
class HPoint(_Triple):
    coords: Vec3

    def __init__(self, x: float, y: float, w: float = 1.0):
        object.__setattr__(self, "coords", normalize3((x, y, w)))

    @classmethod
    def from_vec(cls, v: Sequence[float]) -> HPoint:
        return cls(v[0], v[1], v[2])

    @classmethod
    def direction(cls, dx: float, dy: float) -> HPoint:
        return cls(dx, dy, 0.0)

    @property
    def is_infinite(self) -> bool:
        return abs(self.coords[2]) <= _ZERO

    @property
    def xy(self) -> Tuple[float, float]:
        x, y, w = self.coords
        if abs(w) <= _ZERO:
            raise PointAtInfinity(f"{self!r} has no affine representative")
        return (x / w, y / w)

    def __repr__(self) -> str:
        if self.is_infinite:
            return "HPoint(%r:%r:0)" % (self.coords[0], self.coords[1])
        return "HPoint(%r, %r)" % self.xy


@dataclass(frozen=True, init=False)
class HLine(_Triple):
    coords: Vec3

    def __init__(self, l: float, m: float, n: float):
        object.__setattr__(self, "coords", normalize3((l, m, n)))

    @classmethod
    def from_vec(cls, v: Sequence[float]) -> HLine:
        return cls(v[0], v[1], v[2])

    @property
    def is_infinite(self) -> bool:
        return abs(self.coords[0]) <= _ZERO and abs(self.coords[1]) <= _ZERO

    def euclidean(self) -> Vec3:
        """Coefficients scaled so that ``(l, m)`` is a unit normal."""
        l, m, n = self.coords
        h = math.hypot(l, m)
        if h <= _ZERO:
            raise InfiniteLine("the line at infinity has no normal")
        return (l / h, m / h, n / h)

    @property
    def direction(self) -> Tuple[float, float]:
        l, m, _ = self.euclidean()
        return (-m, l)

    def point_at(self, t: float) -> HPoint:
        """Point at signed distance ``t`` from the foot of the origin."""
        l, m, n = self.euclidean()
        return HPoint(-l * n - m * t, -m * n + l * t)

    def __repr__(self) -> str:
        return "HLine(%r, %r, %r)" % self.coords


LINE_AT_INFINITY = HLine(0.0, 0.0, 1.0)


def point(x: float, y: float) -> HPoint:
    return HPoint(x, y, 1.0)


def join(p: HPoint, q: HPoint, tol: Tolerance = DEFAULT_TOL) -> HLine:
    v = cross(p.coords, q.coords)
    if norm(v) <= tol.exact_tol:
        raise CoincidentPoints(f"{p!r} and {q!r} coincide")
    return HLine.from_vec(v)


def meet(l: HLine, m: HLine, tol: Tolerance = DEFAULT_TOL) -> HPoint:
    v = cross(l.coords, m.coords)
    if norm(v) <= tol.exact_tol:
        raise CoincidentLines(f"{l!r} and {m!r} coincide")
    return HPoint.from_vec(v)


def incident(p: HPoint, l: HLine, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(dot(p.coords, l.coords)) <= tol.abs_tol


def distance(p: HPoint, q: HPoint) -> float:
    (px, py), (qx, qy) = p.xy, q.xy
    return math.hypot(px - qx, py - qy)


def midpoint(p: HPoint, q: HPoint) -> HPoint:
    (px, py), (qx, qy) = p.xy, q.xy
    return HPoint(0.5 * (px + qx), 0.5 * (py + qy))


def lerp(p: HPoint, q: HPoint, t: float) -> HPoint:
    """Affine combination ``p + t (q - p)``."""
    (px, py), (qx, qy) = p.xy, q.xy
    return HPoint(px + t * (qx - px), py + t * (qy - py))


def _finite_check(p: HPoint, l: HLine):
    if p.is_infinite:
        raise PointAtInfinity(f"{p!r} is at infinity")
    if l.is_infinite:
        raise InfiniteLine("operation undefined for the line at infinity")


def signed_distance(p: HPoint, l: HLine) -> float:
    _finite_check(p, l)
    a, b, c = l.euclidean()
    x, y = p.xy
    return a * x + b * y + c


def point_line_distance(p: HPoint, l: HLine) -> float:
    return abs(signed_distance(p, l))


def foot_of_perpendicular(p: HPoint, l: HLine) -> HPoint:
    a, b, _ = l.euclidean() if not l.is_infinite else (0.0, 0.0, 0.0)
    d = signed_distance(p, l)
    x, y = p.xy
    return HPoint(x - a * d, y - b * d)


def reflect_over_line(p: HPoint, l: HLine) -> HPoint:
    a, b, _ = l.euclidean() if not l.is_infinite else (0.0, 0.0, 0.0)
    d = signed_distance(p, l)
    x, y = p.xy
    return HPoint(x - 2 * a * d, y - 2 * b * d)


def perpendicular_line_through(p: HPoint, l: HLine) -> HLine:
    if l.is_infinite:
        raise InfiniteLine("no perpendicular to the line at infinity")
    if p.is_infinite:
        raise PointAtInfinity(f"{p!r} is at infinity")
    a, b, _ = l.euclidean()
    x, y = p.xy
    return HLine(b, -a, a * y - b * x)


def parallel_line_through(p: HPoint, l: HLine) -> HLine:
    if l.is_infinite:
        raise InfiniteLine("no parallel to the line at infinity")
    a, b, _ = l.euclidean()
    x, y = p.xy
    return HLine(a, b, -(a * x + b * y))


# --- residuals used by the theorem checks ---------------------------------


def line_residual(l1: HLine, l2: HLine, scale: float = 1.0) -> float:
    """Max coefficient gap between two finite lines in Euclidean normal form.

    The offset coefficient is divided by ``scale`` so the result is
    dimensionless. Orientation is ignored.
    """
    a = l1.euclidean()
    b = l2.euclidean()
    a = (a[0], a[1], a[2] / scale)
    b = (b[0], b[1], b[2] / scale)
    plus = max(abs(x - y) for x, y in zip(a, b))
    minus = max(abs(x + y) for x, y in zip(a, b))
    return min(plus, minus)


def parallel_residual(l1: HLine, l2: HLine) -> float:
    """|sin| of the angle between two finite lines."""
    a, b = l1.euclidean(), l2.euclidean()
    return abs(a[0] * b[1] - a[1] * b[0])


def perpendicular_residual(l1: HLine, l2: HLine) -> float:
    """|cos| of the angle between two finite lines."""
    a, b = l1.euclidean(), l2.euclidean()
    return abs(a[0] * b[0] + a[1] * b[1])


def incidence_residual(p: HPoint, l: HLine, scale: float = 1.0) -> float:
    """Distance from ``p`` to ``l`` over ``scale``.

    Points at infinity fall back to the sine of the angle between the
    direction and the line.
    """
    if p.is_infinite:
        a, b, _ = l.euclidean()
        return abs(a * p.coords[0] + b * p.coords[1]) / math.hypot(p.coords[0], p.coords[1])
    return point_line_distance(p, l) / scale


def collinearity_residual(p: HPoint, q: HPoint, r: HPoint, scale: float = 1.0) -> float:
    """Twice the signed-area magnitude of three finite points, over ``scale**2``."""
    (px, py), (qx, qy), (rx, ry) = p.xy, q.xy, r.xy
    return abs((qx - px) * (ry - py) - (qy - py) * (rx - px)) / (scale * scale)


# --- cross-ratio ----------------------------------------------------------


def _span_basis(vecs: Sequence[Vec3], tol: Tolerance):
    # orthonormal basis of the 2-plane containing all four triples
    import numpy as np

    m = np.array(vecs, dtype=float)
    _, s, vt = np.linalg.svd(m)
    if s[2] > tol.abs_tol:
        raise NotCollinear(f"smallest singular value {s[2]:.3e} exceeds tolerance")
    return vt[0], vt[1]


def cross_ratio(
    a: Union[HPoint, HLine],
    b: Union[HPoint, HLine],
    c: Union[HPoint, HLine],
    d: Union[HPoint, HLine],
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Cross-ratio ``(a, b; c, d) = [ac][bd] / ([bc][ad])``.

    ``[xy]`` is the 2x2 determinant of the homogeneous coordinates of x and y
    in a shared basis of their common line, so points at infinity need no
    special treatment. Four concurrent lines work the same way by duality.
    """
    vecs = [t.coords for t in (a, b, c, d)]
    e1, e2 = _span_basis(vecs, tol)
    pairs = [(float(e1 @ v), float(e2 @ v)) for v in vecs]

    def br(i: int, j: int) -> float:
        return pairs[i][0] * pairs[j][1] - pairs[j][0] * pairs[i][1]

    den = br(1, 2) * br(0, 3)
    if abs(den) <= tol.exact_tol:
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    return br(0, 2) * br(1, 3) / den


def pencil_cross_ratio(
    center: HPoint, a: HPoint, b: HPoint, c: HPoint, d: HPoint, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Cross-ratio of the four lines joining ``center`` to ``a, b, c, d``."""
    lines = [join(center, p, tol) for p in (a, b, c, d)]
    return cross_ratio(*lines, tol=tol)
