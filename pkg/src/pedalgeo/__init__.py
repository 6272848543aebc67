"""Plane-geometry constructions around pedal triangles with equidistant
offsets, and randomized numerical checks of the statements about them."""

from .checks import CheckReport, TrialConfig, run_suite
from .circles import Circle, circumcircle, power_of_point, radical_axis, to_conic
from .conics import (
    Conic,
    are_conjugate,
    conic_center,
    conic_through_5,
    meet_line,
    polar_line,
    pole_of_line,
    tangent_lines_from,
)
from .errors import GeometryError
from .projective import (
    LINE_AT_INFINITY,
    HLine,
    HPoint,
    Tolerance,
    cross_ratio,
    distance,
    foot_of_perpendicular,
    incident,
    join,
    meet,
    midpoint,
    perpendicular_line_through,
    point,
    reflect_over_line,
)
from .scene import Scene, build_scene
from .triangles import (
    Barycentric,
    CenterKind,
    Triangle,
    center,
    excircle_touch_points,
    from_barycentric,
    isogonal_conjugate,
    isogonal_image_of_line,
    offset_points,
    orthologic_center,
    pedal_triangle,
    reflection_triangle,
    steiner_line,
    to_barycentric,
)

__version__ = "0.1.0"
