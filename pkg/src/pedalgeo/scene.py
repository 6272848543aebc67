"""Full configuration for a (triangle, P, x) triple."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .circles import Circle, circumcircle, radical_axis
from .conics import Conic
from .errors import ConcentricCircles, DegenerateBisectorPedals, DegenerateTriangle
from .projective import (
    DEFAULT_TOL,
    HLine,
    HPoint,
    Tolerance,
    foot_of_perpendicular,
    join,
    perpendicular_line_through,
)
from .triangles import (
    CenterKind,
    Triangle,
    center,
    isogonal_image_of_line,
    offset_points,
    orthologic_center,
    pedal_triangle,
    steiner_line,
)


@dataclass(frozen=True)
class Scene:
    base: Triangle
    p: HPoint
    x: float
    pedal: Triangle
    offsets: Tuple[HPoint, HPoint, HPoint, HPoint, HPoint, HPoint]
    bisector_pedals: Triangle
    h_prime: HPoint
    o_prime: HPoint
    q: HPoint
    q1: HPoint
    q2: HPoint
    o1: Circle
    o2: Circle
    o_p: HPoint
    i: HPoint
    o: HPoint
    nagel: HPoint
    centroid: HPoint
    bevan: HPoint
    rad_axis: Optional[HLine]
    steiner_p: HLine
    q_line: HLine
    c_conic: Conic

    @property
    def tri1(self) -> Triangle:
        a1, _, b1, _, c1, _ = self.offsets
        return Triangle(a1, b1, c1)

    @property
    def tri2(self) -> Triangle:
        _, a2, _, b2, _, c2 = self.offsets
        return Triangle(a2, b2, c2)

    @property
    def scale(self) -> float:
        return self.base.diameter

    def named_points(self) -> Dict[str, HPoint]:
        a_p, b_p, c_p = self.pedal.vertices
        a1, a2, b1, b2, c1, c2 = self.offsets
        a_, b_, c_ = self.bisector_pedals.vertices
        return {
            "A_P": a_p, "B_P": b_p, "C_P": c_p,
            "A1": a1, "A2": a2, "B1": b1, "B2": b2, "C1": c1, "C2": c2,
            "A'": a_, "B'": b_, "C'": c_,
            "H'": self.h_prime, "Q": self.q, "Q1": self.q1, "Q2": self.q2,
            "O1c": self.o1.center, "O2c": self.o2.center, "O_P": self.o_p,
            "I": self.i, "O": self.o, "N": self.nagel, "G": self.centroid, "Be": self.bevan,
        }


def bisector_pedals(p: HPoint, t: Triangle, tol: Tolerance = DEFAULT_TOL) -> Triangle:
    """Feet of the perpendiculars from ``p`` on the lines AI, BI, CI."""
    tol = t.tolerance(tol)
    i = center(t, CenterKind.INCENTER)
    feet = [foot_of_perpendicular(p, join(v, i)) for v in t.vertices]
    try:
        tri = Triangle(*feet)
    except DegenerateTriangle as exc:
        raise DegenerateBisectorPedals(str(exc)) from exc
    if tri.twice_area <= tol.abs_tol * tol.scale ** 2:
        raise DegenerateBisectorPedals("feet on the bisectors are (nearly) collinear")
    return tri


def build_scene(t: Triangle, p: HPoint, x: float, tol: Tolerance = DEFAULT_TOL) -> Scene:
    """Construct every named object of the equidistant-offset configuration.

    Raises ConcentricCircles for ``x == 0`` since the two offset triangles
    then coincide and their radical axis is undefined.
    """
    tol = t.tolerance(tol)
    pedal = pedal_triangle(p, t, tol)
    offsets = offset_points(pedal, t, x, tol)
    a1, a2, b1, b2, c1, c2 = offsets
    primed = bisector_pedals(p, t, tol)
    o1 = circumcircle(a1, b1, c1, tol)
    o2 = circumcircle(a2, b2, c2, tol)
    if x == 0:
        raise ConcentricCircles("x = 0: both offset triangles equal the pedal triangle")
    rad = radical_axis(o1, o2, tol)

    q = orthologic_center(pedal, primed, tol)
    q1 = orthologic_center(Triangle(a1, b1, c1), primed, tol)
    q2 = orthologic_center(Triangle(a2, b2, c2), primed, tol)
    steiner = steiner_line(p, primed, tol)
    # the line carrying Q1, Q, Q2 is perpendicular to the Steiner line through Q
    q_line = perpendicular_line_through(q, steiner)

    return Scene(
        base=t,
        p=p,
        x=x,
        pedal=pedal,
        offsets=offsets,
        bisector_pedals=primed,
        h_prime=center(primed, CenterKind.ORTHOCENTER),
        o_prime=center(primed, CenterKind.CIRCUMCENTER),
        q=q,
        q1=q1,
        q2=q2,
        o1=o1,
        o2=o2,
        o_p=circumcircle(*pedal.vertices, tol).center,
        i=center(t, CenterKind.INCENTER),
        o=center(t, CenterKind.CIRCUMCENTER),
        nagel=center(t, CenterKind.NAGEL),
        centroid=center(t, CenterKind.CENTROID),
        bevan=center(t, CenterKind.BEVAN),
        rad_axis=rad,
        steiner_p=steiner,
        q_line=q_line,
        c_conic=isogonal_image_of_line(q_line, primed, tol),
    )
