import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pedalgeo.errors import CoincidentLines, CoincidentPoints, NotCollinear, PointAtInfinity
from pedalgeo.projective import (
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

from oracles import T0, as_float
from oracles import foot as oracle_foot
from oracles import reflect as oracle_reflect

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
points = st.builds(point, coord, coord)


def assert_point(p, x, y, tol=1e-12):
    px, py = p.xy
    assert abs(px - x) <= tol and abs(py - y) <= tol, (p, (x, y))


def same_line(l, coeffs):
    return l.same_as(HLine(*coeffs), 1e-12)


class TestJoinMeet:
    def test_axis(self):
        assert same_line(join(point(0, 0), point(1, 0)), (0, 1, 0))

    def test_horizontal(self):
        assert same_line(join(point(1, 1), point(2, 1)), (0, 1, -1))

    def test_vertical_through_direction(self):
        assert same_line(join(point(1, 0), HPoint.direction(0, 1)), (1, 0, -1))

    def test_coincident(self):
        with pytest.raises(CoincidentPoints):
            join(point(1, 2), HPoint(2, 4, 2))

    def test_meet_axes(self):
        assert_point(meet(HLine(1, 0, 0), HLine(0, 1, 0)), 0, 0)

    def test_meet_parallels_at_infinity(self):
        p = meet(HLine(0, 1, 0), HLine(0, 1, -1))
        assert p.is_infinite
        assert p == HPoint(1, 0, 0)

    def test_meet_diagonals(self):
        assert_point(meet(HLine(1, 1, -1), HLine(1, -1, 0)), 0.5, 0.5)

    def test_meet_same_line(self):
        with pytest.raises(CoincidentLines):
            meet(HLine(1, 1, 1), HLine(-2, -2, -2))

    @given(points, points, points)
    def test_duality(self, p, q, r):
        assume(abs(np.dot(np.cross(p.coords, q.coords), r.coords)) > 1e-6)
        back = meet(join(p, q), join(p, r))
        assert back.same_as(p, 1e-9)


class TestIncidence:
    def test_on(self):
        assert incident(point(1, 1), HLine(1, -1, 0))

    def test_off(self):
        assert not incident(point(1, 2), HLine(1, -1, 0))

    def test_within_tolerance(self):
        assert incident(point(1, 1 + 1e-10), HLine(1, -1, 0), Tolerance(abs_tol=1e-7))


class TestCrossRatio:
    def test_harmonic_with_infinity(self):
        cr = cross_ratio(point(0, 0), point(2, 0), point(1, 0), HPoint.direction(1, 0))
        assert cr == pytest.approx(-1.0, abs=1e-12)

    def test_direct_formula(self):
        a, b, c, d = 0.0, 3.0, 1.0, 2.0
        expected = ((c - a) * (d - b)) / ((c - b) * (d - a))
        assert expected == 0.25
        cr = cross_ratio(*(point(v, 0) for v in (a, b, c, d)))
        assert cr == pytest.approx(expected, abs=1e-12)

    def test_c_equals_a(self):
        assert cross_ratio(point(0, 0), point(3, 0), point(0, 0), point(2, 0)) == pytest.approx(0)

    def test_not_collinear(self):
        with pytest.raises(NotCollinear):
            cross_ratio(point(0, 0), point(3, 0), point(1, 1), point(2, 0))

    def test_pencil_of_lines(self):
        # lines through the origin, slopes 0, inf, 1, -1 are harmonic
        lines = [HLine(0, 1, 0), HLine(1, 0, 0), HLine(1, -1, 0), HLine(1, 1, 0)]
        assert cross_ratio(*lines) == pytest.approx(-1.0, abs=1e-12)

    @settings(max_examples=150)
    @given(
        st.lists(st.floats(-5, 5), min_size=4, max_size=4, unique=True),
        st.lists(st.floats(-2, 2), min_size=9, max_size=9),
        points,
        st.floats(0, math.pi),
    )
    def test_projective_invariance(self, params, entries, origin, angle):
        assume(min(abs(a - b) for i, a in enumerate(params) for b in params[i + 1:]) > 0.05)
        h = np.array(entries).reshape(3, 3) + 3 * np.eye(3)
        assume(abs(np.linalg.det(h)) > 0.5 and np.linalg.cond(h) < 50)
        ox, oy = origin.xy
        pts = [point(ox + t * math.cos(angle), oy + t * math.sin(angle)) for t in params]
        before = cross_ratio(*pts)
        mapped = [HPoint.from_vec(h @ np.array(p.coords)) for p in pts]
        after = cross_ratio(*mapped)
        assert after == pytest.approx(before, abs=1e-6, rel=1e-6)


class TestMetric:
    def test_distance(self):
        assert distance(point(0, 0), point(3, 4)) == 5

    def test_distance_zero(self):
        assert distance(point(2, 7), point(2, 7)) == 0

    def test_distance_infinite(self):
        with pytest.raises(PointAtInfinity):
            distance(point(0, 0), HPoint(1, 0, 0))

    def test_midpoint(self):
        assert_point(midpoint(point(0, 0), point(2, 2)), 1, 1)
        assert_point(midpoint(point(3, -1), point(3, -1)), 3, -1)

    def test_midpoint_of_incenter_and_bevan(self):
        assert_point(midpoint(point(1, 1), point(3, 2)), 2, 1.5)

    def test_foot(self):
        assert_point(foot_of_perpendicular(point(1, 1), HLine(0, 1, 0)), 1, 0)
        assert_point(foot_of_perpendicular(point(2, 0), HLine(0, 1, 0)), 2, 0)

    def test_foot_oracle(self):
        # T0 side BC: 3x + 4y = 12
        fx, fy = as_float(oracle_foot((F(3), F(2)), T0[1], T0[2]))
        assert (fx, fy) == (2.4, 1.2)
        assert_point(foot_of_perpendicular(point(3, 2), HLine(3, 4, -12)), fx, fy)

    def test_reflect(self):
        assert_point(reflect_over_line(point(0, 1), HLine(0, 1, 0)), 0, -1)
        rx, ry = as_float(oracle_reflect((F(3), F(2)), T0[1], T0[2]))
        assert (rx, ry) == (1.8, 0.4)
        assert_point(reflect_over_line(point(3, 2), HLine(3, 4, -12)), rx, ry)

    def test_perpendicular(self):
        assert same_line(perpendicular_line_through(point(0, 0), HLine(0, 1, -1)), (1, 0, 0))
        # normal of the result is the direction of x + y = 0
        assert same_line(perpendicular_line_through(point(1, 2), HLine(1, 1, 0)), (1, -1, 1))
        assert same_line(perpendicular_line_through(point(3, 5), HLine(1, 0, -7)), (0, 1, -5))

    @given(points, points, points)
    def test_reflection_involution_and_foot(self, p, a, b):
        assume(distance(a, b) > 1e-3)
        l = join(a, b)
        r = reflect_over_line(p, l)
        assert reflect_over_line(r, l).same_as(p, 1e-9)
        f = foot_of_perpendicular(p, l)
        m = midpoint(p, r)
        assert distance(f, m) <= 1e-9 * (1 + distance(p, a))

    @settings(max_examples=30)
    @given(points, points, points, st.lists(st.floats(-100, 100), min_size=100, max_size=100))
    def test_foot_is_closest(self, p, a, b, ts):
        assume(distance(a, b) > 1e-2)
        l = join(a, b)
        d = distance(p, foot_of_perpendicular(p, l))
        for t in ts:
            assert d <= distance(p, l.point_at(t)) + 1e-9


class TestNormalization:
    @given(coord, coord, st.floats(-5, 5).filter(lambda w: abs(w) > 1e-3))
    def test_idempotent_and_sign(self, x, y, w):
        p = HPoint(x, y, w)
        assert HPoint.from_vec(p.coords).same_as(p, 1e-15)
        assert HPoint(-x, -y, -w).same_as(p, 1e-15)
        assert max(abs(u - v) for u, v in zip(HPoint.from_vec(p.coords).coords, p.coords)) <= 4e-16
        assert math.isclose(sum(c * c for c in p.coords), 1.0)

    def test_non_finite_rejected(self):
        from pedalgeo.errors import NonFinite, ZeroVector

        with pytest.raises(NonFinite):
            HPoint(float("nan"), 0)
        with pytest.raises(ZeroVector):
            HLine(0, 0, 0)
