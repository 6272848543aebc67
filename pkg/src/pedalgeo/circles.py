"""Circles, power of a point and radical axes."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conics import Conic
from .errors import CollinearPoints, ConcentricCircles, PointAtInfinity
from .projective import DEFAULT_TOL, HLine, HPoint, Tolerance


@dataclass(frozen=True)
class Circle:
    center: HPoint
    r_sq: float

    def __post_init__(self):
        if self.center.is_infinite:
            raise PointAtInfinity("circle center must be finite")
        if not (math.isfinite(self.r_sq) and self.r_sq >= 0):
            raise ValueError(f"invalid squared radius {self.r_sq!r}")

    @property
    def radius(self) -> float:
        return math.sqrt(self.r_sq)


def circumcircle(a: HPoint, b: HPoint, c: HPoint, tol: Tolerance = DEFAULT_TOL) -> Circle:
    (ax, ay), (bx, by), (cx, cy) = a.xy, b.xy, c.xy
    # translate to a for accuracy
    bx, by, cx, cy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2.0 * (bx * cy - by * cx)
    if abs(d) <= 2.0 * tol.exact_tol * tol.scale * tol.scale:
        raise CollinearPoints("circumcircle of collinear points")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Circle(HPoint(ax + ux, ay + uy), ux * ux + uy * uy)


def power_of_point(p: HPoint, c: Circle) -> float:
    (px, py), (cx, cy) = p.xy, c.center.xy
    return (px - cx) ** 2 + (py - cy) ** 2 - c.r_sq


def radical_axis(c1: Circle, c2: Circle, tol: Tolerance = DEFAULT_TOL) -> HLine:
    """Locus of equal power, from the difference of the expanded equations."""
    (x1, y1), (x2, y2) = c1.center.xy, c2.center.xy
    dx, dy = x1 - x2, y1 - y2
    if math.hypot(dx, dy) < tol.exact_tol * tol.scale:
        raise ConcentricCircles("circles share a center; no radical axis")
    # (x1^2 - x2^2) + (y1^2 - y2^2) factored to limit cancellation
    k = dx * (x1 + x2) + dy * (y1 + y2) - (c1.r_sq - c2.r_sq)
    return HLine(-2.0 * dx, -2.0 * dy, k)


def to_conic(c: Circle) -> Conic:
    x, y = c.center.xy
    return Conic(np.array([[1.0, 0.0, -x], [0.0, 1.0, -y], [-x, -y, x * x + y * y - c.r_sq]]))
