"""Plane conics in symmetric coefficient form.

A conic is a symmetric 3x3 matrix ``m`` (up to scale); the point ``p`` lies on
it iff ``p^T m p == 0``. Matrices are Frobenius-normalized with a deterministic
sign so residuals are comparable across conics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .errors import CenterOfConic, DegenerateConic, IllConditioned, InteriorPoint
from .projective import (
    DEFAULT_TOL,
    LINE_AT_INFINITY,
    HLine,
    HPoint,
    Tolerance,
    join,
)

DEGENERACY_THRESHOLD = 1e-12
# ratio of the two smallest singular values above which a fit is ambiguous
ILL_CONDITIONED_RATIO = 0.5


def _normalized(m: np.ndarray) -> np.ndarray:
    m = 0.5 * (m + m.T)
    f = np.linalg.norm(m)
    if not np.isfinite(f) or f == 0.0:
        raise DegenerateConic("zero or non-finite coefficient matrix")
    m = m / f
    # sign: first entry of the upper triangle that is clearly nonzero is positive
    for i, j in ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)):
        if abs(m[i, j]) > 1e-12:
            if m[i, j] < 0:
                m = -m
            break
    return m + 0.0


@dataclass(frozen=True, eq=False)
class Conic:
    m: np.ndarray
    degenerate: bool = field(init=False)

    def __post_init__(self):
        m = _normalized(np.asarray(self.m, dtype=float))
        m.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "degenerate", abs(np.linalg.det(m)) < DEGENERACY_THRESHOLD)

    @classmethod
    def from_coefficients(cls, a, b, c, d, e, f) -> Conic:
        """``a x^2 + b xy + c y^2 + d xw + e yw + f w^2``."""
        return cls(np.array([[a, b / 2, d / 2], [b / 2, c, e / 2], [d / 2, e / 2, f]]))

    def value(self, p: HPoint) -> float:
        v = np.asarray(p.coords)
        return float(v @ self.m @ v)

    def bilinear(self, p: HPoint, q: HPoint) -> float:
        return float(np.asarray(p.coords) @ self.m @ np.asarray(q.coords))

    def contains(self, p: HPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
        return abs(self.value(p)) <= tol.abs_tol

    def same_as(self, other: Conic, tol: float = 1e-8) -> bool:
        return min(np.abs(self.m - other.m).max(), np.abs(self.m + other.m).max()) <= tol

    def __repr__(self) -> str:
        return f"Conic({np.array2string(self.m, precision=6)}, degenerate={self.degenerate})"


def _require_nondegenerate(c: Conic):
    if c.degenerate:
        raise DegenerateConic("operation needs a nondegenerate conic")


def _veronese(v: Sequence[float]) -> List[float]:
    x, y, w = v
    return [x * x, x * y, y * y, x * w, y * w, w * w]


def conic_through_points(points: Sequence[HPoint]) -> Conic:
    """Least-squares conic through five or more points.

    Solves the homogeneous system in the six monomials for the unit coefficient
    vector of smallest residual. Raises :class:`IllConditioned` when the two
    smallest residual directions are comparable (the solution is not unique,
    e.g. four collinear points).
    """
    if len(points) < 5:
        raise ValueError("need at least five points")
    a = np.array([_veronese(p.coords) for p in points])
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    sv = np.zeros(6)
    sv[: len(s)] = s
    smallest, second = sv[5], sv[4]
    if second <= 1e-10 * sv[0] or smallest > ILL_CONDITIONED_RATIO * second:
        raise IllConditioned(
            f"singular values {second:.3e}, {smallest:.3e} do not isolate a conic"
        )
    return Conic.from_coefficients(*vt[5])


def conic_through_5(p1: HPoint, p2: HPoint, p3: HPoint, p4: HPoint, p5: HPoint) -> Conic:
    return conic_through_points([p1, p2, p3, p4, p5])


def polar_line(p: HPoint, c: Conic, tol: Tolerance = DEFAULT_TOL) -> HLine:
    _require_nondegenerate(c)
    v = c.m @ np.asarray(p.coords)
    if np.linalg.norm(v) <= tol.exact_tol:
        raise CenterOfConic(f"{p!r} is a singular point of the conic")
    return HLine.from_vec(v)


def pole_of_line(l: HLine, c: Conic) -> HPoint:
    _require_nondegenerate(c)
    return HPoint.from_vec(np.linalg.solve(c.m, np.asarray(l.coords)))


def are_conjugate(p: HPoint, q: HPoint, c: Conic, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(c.bilinear(p, q)) <= tol.abs_tol


def conic_center(c: Conic) -> HPoint:
    return pole_of_line(LINE_AT_INFINITY, c)


def _line_basis(l: HLine) -> Tuple[np.ndarray, np.ndarray]:
    # orthonormal pair spanning the points of l
    _, _, vt = np.linalg.svd(np.asarray(l.coords).reshape(1, 3))
    return vt[1], vt[2]


def meet_line(l: HLine, c: Conic, tol: Tolerance = DEFAULT_TOL) -> List[HPoint]:
    """Real intersections of a line and a conic.

    Returns zero, one (tangency, a double point) or two points.
    """
    _require_nondegenerate(c)
    e1, e2 = _line_basis(l)
    a = float(e1 @ c.m @ e1)
    b = float(e1 @ c.m @ e2)
    cc = float(e2 @ c.m @ e2)
    disc = b * b - a * cc
    scale = a * a + b * b + cc * cc
    if disc < -tol.exact_tol * scale:
        return []
    if disc <= tol.exact_tol * scale:
        s, t = (-b, a) if abs(a) >= abs(cc) else (cc, -b)
        return [HPoint.from_vec(s * e1 + t * e2)]
    r = math.sqrt(disc)
    q = -(b + math.copysign(r, b))
    roots = [(q, a), (cc, q)]
    return [HPoint.from_vec(s * e1 + t * e2) for s, t in roots]


def tangent_lines_from(
    p: HPoint, c: Conic, tol: Tolerance = DEFAULT_TOL
) -> List[Tuple[HLine, HPoint]]:
    """Tangents from ``p`` paired with their touch points.

    A point on the conic has the single tangent ``polar_line(p, c)``.
    """
    _require_nondegenerate(c)
    if c.contains(p, tol):
        return [(polar_line(p, c, tol), p)]
    touches = meet_line(polar_line(p, c, tol), c, tol)
    if not touches:
        raise InteriorPoint(f"no real tangents from {p!r}")
    return [(join(p, t, tol), t) for t in touches]
