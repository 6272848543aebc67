"""Triangle-anchored constructions.

Centers go through one barycentric formula table; everything else (pedal and
reflection triangles, isogonal conjugation, Steiner lines, orthologic centers)
is built from the projective primitives.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .circles import circumcircle, power_of_point
from .conics import Conic, conic_through_5
from .errors import (
    DegeneratePedal,
    DegenerateReflection,
    DegenerateTriangle,
    GeometryError,
    InvalidPedal,
    NotOnCircumcircle,
    NotOrthologic,
    OnSideline,
    SampleDegenerate,
)
from .projective import (
    DEFAULT_TOL,
    HLine,
    HPoint,
    Tolerance,
    distance,
    foot_of_perpendicular,
    incidence_residual,
    join,
    meet,
    midpoint,
    normalize3,
    perpendicular_line_through,
    point_line_distance,
    reflect_over_line,
)


@dataclass(frozen=True)
class Triangle:
    a_vertex: HPoint
    b_vertex: HPoint
    c_vertex: HPoint

    def __post_init__(self):
        for v in self.vertices:
            v.xy  # raises PointAtInfinity
        (ax, ay), (bx, by), (cx, cy) = (v.xy for v in self.vertices)
        twice_area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        diam = max(self.sides)
        if abs(twice_area) <= DEFAULT_TOL.exact_tol * max(diam, 1e-300) ** 2:
            raise DegenerateTriangle("vertices are collinear")

    @classmethod
    def from_xy(cls, a, b, c) -> Triangle:
        return cls(HPoint(*a), HPoint(*b), HPoint(*c))

    @property
    def vertices(self) -> Tuple[HPoint, HPoint, HPoint]:
        return (self.a_vertex, self.b_vertex, self.c_vertex)

    def __iter__(self) -> Iterator[HPoint]:
        return iter(self.vertices)

    @property
    def sides(self) -> Tuple[float, float, float]:
        """Side lengths ``(a, b, c) = (|BC|, |CA|, |AB|)``."""
        A, B, C = self.vertices
        return (distance(B, C), distance(C, A), distance(A, B))

    @property
    def sidelines(self) -> Tuple[HLine, HLine, HLine]:
        """Lines BC, CA, AB (opposite A, B, C)."""
        A, B, C = self.vertices
        return (join(B, C), join(C, A), join(A, B))

    @property
    def diameter(self) -> float:
        return max(self.sides)

    @property
    def twice_area(self) -> float:
        (ax, ay), (bx, by), (cx, cy) = (v.xy for v in self.vertices)
        return abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))

    @property
    def inradius(self) -> float:
        return self.twice_area / sum(self.sides)

    def tolerance(self, tol: Tolerance = DEFAULT_TOL) -> Tolerance:
        return tol.with_scale(self.diameter)

    def xy(self):
        return [v.xy for v in self.vertices]


# --- barycentrics ---------------------------------------------------------


@dataclass(frozen=True, init=False)
class Barycentric:
    coords: Tuple[float, float, float]

    def __init__(self, u: float, v: float, w: float):
        object.__setattr__(self, "coords", normalize3((u, v, w)))

    def __iter__(self):
        return iter(self.coords)


def _vertex_matrix(t: Triangle) -> np.ndarray:
    # columns are the affine vertices with w = 1
    return np.array([[x, y, 1.0] for x, y in t.xy()]).T


def to_barycentric(p: HPoint, t: Triangle) -> Barycentric:
    return Barycentric(*np.linalg.solve(_vertex_matrix(t), np.asarray(p.coords)))


def from_barycentric(b: Barycentric, t: Triangle) -> HPoint:
    """Point with barycentrics ``b``; ``u + v + w == 0`` gives a direction."""
    u, v, w = b.coords
    (ax, ay), (bx, by), (cx, cy) = t.xy()
    return HPoint(u * ax + v * bx + w * cx, u * ay + v * by + w * cy, u + v + w)


class CenterKind(enum.Enum):
    INCENTER = "incenter"
    CENTROID = "centroid"
    CIRCUMCENTER = "circumcenter"
    ORTHOCENTER = "orthocenter"
    NINE_POINT = "nine_point"
    NAGEL = "nagel"
    BEVAN = "bevan"
    EXCENTER_A = "excenter_a"
    EXCENTER_B = "excenter_b"
    EXCENTER_C = "excenter_c"


def _center_barycentrics(a: float, b: float, c: float, kind: CenterKind):
    a2, b2, c2 = a * a, b * b, c * c
    s = 0.5 * (a + b + c)
    if kind is CenterKind.INCENTER:
        return (a, b, c)
    if kind is CenterKind.CENTROID:
        return (1.0, 1.0, 1.0)
    if kind is CenterKind.CIRCUMCENTER:
        return (a2 * (b2 + c2 - a2), b2 * (c2 + a2 - b2), c2 * (a2 + b2 - c2))
    if kind is CenterKind.ORTHOCENTER:
        sa, sb, sc = (b2 + c2 - a2) / 2, (c2 + a2 - b2) / 2, (a2 + b2 - c2) / 2
        return (sb * sc, sc * sa, sa * sb)
    if kind is CenterKind.NINE_POINT:
        return (
            a2 * (b2 + c2) - (b2 - c2) ** 2,
            b2 * (c2 + a2) - (c2 - a2) ** 2,
            c2 * (a2 + b2) - (a2 - b2) ** 2,
        )
    if kind is CenterKind.NAGEL:
        return (s - a, s - b, s - c)
    if kind is CenterKind.BEVAN:
        def f(x, y, z):
            return x * (x ** 3 + x * x * (y + z) - x * (y + z) ** 2 - (y + z) * (y - z) ** 2)

        return (f(a, b, c), f(b, c, a), f(c, a, b))
    if kind is CenterKind.EXCENTER_A:
        return (-a, b, c)
    if kind is CenterKind.EXCENTER_B:
        return (a, -b, c)
    if kind is CenterKind.EXCENTER_C:
        return (a, b, -c)
    raise ValueError(kind)


def center(t: Triangle, kind: CenterKind) -> HPoint:
    return from_barycentric(Barycentric(*_center_barycentrics(*t.sides, kind)), t)


def incenter(t: Triangle) -> HPoint:
    return center(t, CenterKind.INCENTER)


def circumcenter(t: Triangle) -> HPoint:
    return center(t, CenterKind.CIRCUMCENTER)


def orthocenter(t: Triangle) -> HPoint:
    return center(t, CenterKind.ORTHOCENTER)


def excentral_triangle(t: Triangle) -> Triangle:
    return Triangle(
        center(t, CenterKind.EXCENTER_A),
        center(t, CenterKind.EXCENTER_B),
        center(t, CenterKind.EXCENTER_C),
    )


def excircle_touch_points(t: Triangle) -> Tuple[HPoint, HPoint, HPoint]:
    """Touch points of the A-, B-, C-excircles with BC, CA, AB."""
    a, b, c = t.sides
    s = 0.5 * (a + b + c)
    return (
        from_barycentric(Barycentric(0.0, s - b, s - c), t),
        from_barycentric(Barycentric(s - a, 0.0, s - c), t),
        from_barycentric(Barycentric(s - a, s - b, 0.0), t),
    )


def medial_triangle(t: Triangle) -> Triangle:
    A, B, C = t.vertices
    return Triangle(midpoint(B, C), midpoint(C, A), midpoint(A, B))


def orthic_triangle(t: Triangle) -> Triangle:
    return Triangle(*(foot_of_perpendicular(v, l) for v, l in zip(t.vertices, t.sidelines)))


# --- point-to-triangle constructions ----------------------------------------


def on_circumcircle(p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> bool:
    tol = t.tolerance(tol)
    circ = circumcircle(*t.vertices, tol=tol)
    return abs(power_of_point(p, circ)) <= tol.abs_tol * tol.scale ** 2


def pedal_triangle(p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> Triangle:
    """Feet of the perpendiculars from ``p`` on BC, CA, AB."""
    if on_circumcircle(p, t, tol):
        raise DegeneratePedal(f"{p!r} lies on the circumcircle; the feet are collinear")
    feet = [foot_of_perpendicular(p, l) for l in t.sidelines]
    try:
        return Triangle(*feet)
    except DegenerateTriangle as exc:
        raise DegeneratePedal(str(exc)) from exc


def _unit(p: HPoint, q: HPoint) -> Tuple[float, float]:
    (px, py), (qx, qy) = p.xy, q.xy
    d = math.hypot(qx - px, qy - py)
    return ((qx - px) / d, (qy - py) / d)


def offset_points(pedal: Triangle, base: Triangle, x: float, tol: Tolerance = DEFAULT_TOL):
    """Six points at distance ``x`` from the pedal vertices along the sidelines.

    ``A1, B1, C1`` move along the side directions B->C, C->A, A->B and
    ``A2, B2, C2`` along the reverse directions. Returns
    ``(A1, A2, B1, B2, C1, C2)``.
    """
    if x < 0 or not math.isfinite(x):
        raise ValueError(f"offset must be a finite non-negative number, got {x!r}")
    tol = base.tolerance(tol)
    A, B, C = base.vertices
    for v, l, name in zip(pedal.vertices, base.sidelines, "ABC"):
        if point_line_distance(v, l) > tol.abs_tol * tol.scale:
            raise InvalidPedal(f"pedal vertex {name} is off its sideline")
    out = []
    for v, (start, end) in zip(pedal.vertices, ((B, C), (C, A), (A, B))):
        ux, uy = _unit(start, end)
        vx, vy = v.xy
        out.append(HPoint(vx + x * ux, vy + x * uy))
        out.append(HPoint(vx - x * ux, vy - x * uy))
    return tuple(out)


def isogonal_conjugate(
    p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL, allow_sideline: bool = False
) -> HPoint:
    """Barycentric map ``(u:v:w) -> (a^2 vw : b^2 wu : c^2 uv)``.

    Points on a sideline raise :class:`OnSideline`. With ``allow_sideline``
    they map to the opposite vertex (the limit of the map) and only the
    vertices themselves raise.
    """
    u, v, w = to_barycentric(p, t).coords
    zeros = sum(abs(c) <= tol.exact_tol for c in (u, v, w))
    if zeros > (1 if allow_sideline else 0):
        raise OnSideline(f"{p!r} lies on a sideline")
    a, b, c = t.sides
    return from_barycentric(Barycentric(a * a * v * w, b * b * w * u, c * c * u * v), t)


def isogonal_image_of_line(l: HLine, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> Conic:
    """Circumconic that is the isogonal image of ``l``.

    Built by a five-point fit through the vertices and the conjugates of two
    points of ``l``, sampled at +-1 (doubling outward on collisions) from the
    point of ``l`` nearest the centroid.
    """
    A, B, C = t.vertices
    if l.is_infinite:
        samples = [
            (HPoint.direction(math.cos(th), math.sin(th)), HPoint.direction(-math.sin(th), math.cos(th)))
            for th in (0.3 + 0.37 * k for k in range(9))
        ]
    else:
        g = center(t, CenterKind.CENTROID)
        f = foot_of_perpendicular(g, l)
        fx, fy = f.xy
        dx, dy = l.direction
        step = 1.0
        samples = []
        for _ in range(9):
            samples.append(
                (HPoint(fx + step * dx, fy + step * dy), HPoint(fx - step * dx, fy - step * dy))
            )
            step *= 2.0
    last: Exception | None = None
    for p1, p2 in samples:
        try:
            q1 = isogonal_conjugate(p1, t, tol)
            q2 = isogonal_conjugate(p2, t, tol)
            return conic_through_5(A, B, C, q1, q2)
        except GeometryError as exc:
            last = exc
    raise SampleDegenerate(f"no usable sample pair on {l!r}: {last}")


def reflection_triangle(p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> Triangle:
    """Reflections of ``p`` in BC, CA, AB."""
    if on_circumcircle(p, t, tol):
        raise DegenerateReflection(f"{p!r} lies on the circumcircle")
    pts = [reflect_over_line(p, l) for l in t.sidelines]
    try:
        return Triangle(*pts)
    except DegenerateTriangle as exc:
        raise DegenerateReflection(str(exc)) from exc


def steiner_line(p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> HLine:
    """Line through the three side-reflections of a circumcircle point."""
    if not on_circumcircle(p, t, tol):
        raise NotOnCircumcircle(f"{p!r} is not on the circumcircle")
    pts = [reflect_over_line(p, l) for l in t.sidelines]
    # join the farthest pair; two reflections coincide when p is a vertex
    i, j = max(((0, 1), (1, 2), (0, 2)), key=lambda ij: distance(pts[ij[0]], pts[ij[1]]))
    return join(pts[i], pts[j])


def orthologic_center(t1: Triangle, t2: Triangle, tol: Tolerance = DEFAULT_TOL) -> HPoint:
    """Common point of the perpendiculars from the vertices of ``t1`` to the
    corresponding sides of ``t2``."""
    tol = t1.tolerance(tol).with_scale(max(t1.diameter, t2.diameter))
    perps = [perpendicular_line_through(v, s) for v, s in zip(t1.vertices, t2.sidelines)]
    q = meet(perps[0], perps[1], tol)
    miss = incidence_residual(q, perps[2], tol.scale)
    if miss > tol.abs_tol:
        raise NotOrthologic(f"third perpendicular misses by {miss:.3e} (relative)")
    return q
