"""Residual checks of every statement about the configuration.

Each check has a residual function on explicit geometry (used by the fixed
fixtures) and a trial function that draws its inputs from ``(seed, index)``.
``run_suite`` runs trials, turns hypothesis-excluded degeneracies into skips
and everything else into pass/fail against the tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .circles import circumcircle, power_of_point, to_conic
from .conics import conic_center, conic_through_5, pole_of_line, polar_line
from .errors import ConcentricCircles, GeometryError, UnknownCheckId
from .projective import (
    DEFAULT_TOL,
    HLine,
    HPoint,
    Tolerance,
    collinearity_residual,
    distance,
    foot_of_perpendicular,
    incidence_residual,
    join,
    lerp,
    line_residual,
    meet,
    parallel_residual,
    pencil_cross_ratio,
    perpendicular_line_through,
    perpendicular_residual,
    point_line_distance,
)
from .sampling import draw_triangle, sample_triangle, stream_id, trial_rng
from .scene import Scene, build_scene
from .triangles import (
    Barycentric,
    CenterKind,
    Triangle,
    center,
    from_barycentric,
    isogonal_conjugate,
    isogonal_image_of_line,
    orthic_triangle,
    reflection_triangle,
    steiner_line,
)

# conditioning margins for sampled points (fractions of the triangle diameter
# or of R^2); hypotheses exclude the boundary, the margins keep away from it
POWER_MARGIN = 0.02
INCENTER_MARGIN = 0.05
IO_MARGIN = 0.05


class Skip(Exception):
    """Trial excluded by the statement's hypotheses."""


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 200
    tol: Tolerance = DEFAULT_TOL
    x_grid: Tuple[float, ...] = (0.1, 0.25, 0.5)
    t_range: Tuple[float, float] = (0.5, 3.0)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.x_grid or min(self.x_grid) <= 0:
            raise ValueError("x_grid values must be positive")
        lo, hi = self.t_range
        if lo > hi or (lo <= 0.2 and hi >= -0.2):
            raise ValueError("t_range must exclude |t| <= 0.2")


@dataclass(frozen=True)
class Failure:
    index: int
    residual: Optional[float]
    detail: str


@dataclass
class CheckReport:
    id: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool
    failures: List[Failure] = field(default_factory=list)
    skipped: int = 0


Residuals = Dict[str, float]


def _worst(res: Residuals) -> Tuple[float, str]:
    name = max(res, key=res.get)
    return res[name], name


# --- residual functions on explicit geometry --------------------------------


def arc_midpoint(t: Triangle) -> HPoint:
    """Second intersection of the A-bisector with the circumcircle."""
    a = t.a_vertex
    ax, ay = a.xy
    ix, iy = center(t, CenterKind.INCENTER).xy
    ox, oy = center(t, CenterKind.CIRCUMCENTER).xy
    dx, dy = ix - ax, iy - ay
    tau = -2.0 * ((ax - ox) * dx + (ay - oy) * dy) / (dx * dx + dy * dy)
    return HPoint(ax + tau * dx, ay + tau * dy)


def equidistant_residuals(t: Triangle, u: float) -> Residuals:
    A, B, C = t.vertices
    d = arc_midpoint(t)
    b_prime = lerp(B, A, u / distance(A, B))
    c_prime = lerp(C, A, -u / distance(A, C))
    return {"DB'=DC'": abs(distance(d, b_prime) - distance(d, c_prime)) / t.diameter}


def metric_identity_terms(t: Triangle, p: HPoint, q: HPoint):
    """``(R_PQ^2, HP^2 + HQ^2, R^2 - OH^2)`` for a pair of isogonal conjugates."""
    h = center(t, CenterKind.ORTHOCENTER)
    o = center(t, CenterKind.CIRCUMCENTER)
    r_sq = circumcircle(*t.vertices).r_sq
    r_pq_sq = circumcircle(*reflection_triangle(p, t).vertices).r_sq
    return r_pq_sq, distance(h, p) ** 2 + distance(h, q) ** 2, r_sq - distance(o, h) ** 2


def metric_identity_residual(t: Triangle, p: HPoint, q: HPoint) -> float:
    """Residual of ``R_PQ^2 = HP^2 + HQ^2 + (R^2 - OH^2)``.

    ``R^2 - OH^2`` is minus the power of H; it is positive for acute and
    negative for obtuse triangles.
    """
    lhs, dist_sq, h_term = metric_identity_terms(t, p, q)
    return abs(lhs - (dist_sq + h_term)) / t.diameter ** 2


def metric_identity_abs_residual(t: Triangle, p: HPoint, q: HPoint) -> float:
    """Residual of the absolute-value variant ``+ |R^2 - OH^2|``.

    Agrees with :func:`metric_identity_residual` unless the triangle is obtuse.
    """
    lhs, dist_sq, h_term = metric_identity_terms(t, p, q)
    return abs(lhs - (dist_sq + abs(h_term))) / t.diameter ** 2


def orthology_residuals(s: Scene) -> Residuals:
    sc = s.scale
    primed = s.bisector_pedals
    res: Residuals = {}
    for k, tri, circ, qk in ((1, s.tri1, s.o1, s.q1), (2, s.tri2, s.o2, s.q2)):
        ok = circ.center
        # A'O_k is perpendicular to B_kC_k, and cyclically
        for v, side in zip(primed.vertices, tri.sidelines):
            res[f"perp{k}"] = max(
                res.get(f"perp{k}", 0.0),
                point_line_distance(ok, perpendicular_line_through(v, side)) / sc,
            )
        # Q_k may sit on a side of A'B'C' (it does on exact fixtures); its
        # conjugate is then the opposite vertex
        conj = isogonal_conjugate(qk, primed, allow_sideline=True)
        res[f"isogonal{k}"] = distance(conj, ok) / sc
        refl = reflection_triangle(qk, primed)
        res[f"reflection{k}"] = max(distance(a, b) for a, b in zip(refl.vertices, tri.vertices)) / sc
    res["H'Q1=H'Q2"] = abs(distance(s.h_prime, s.q1) - distance(s.h_prime, s.q2)) / sc
    res["QQ1=QQ2"] = abs(distance(s.q, s.q1) - distance(s.q, s.q2)) / sc
    res["Q1,Q,Q2 on q"] = max(incidence_residual(p, s.q_line, sc) for p in (s.q1, s.q2))
    res["q perp steiner"] = perpendicular_residual(s.q_line, s.steiner_p)
    res["H',Q on steiner"] = max(incidence_residual(p, s.steiner_p, sc) for p in (s.h_prime, s.q))
    return res


def _scenes(t: Triangle, p: HPoint, xs: Sequence[float], tol: Tolerance) -> List[Scene]:
    """Scenes for each x, leaving out offsets with no radical axis (x = 0)."""
    out = []
    for x in xs:
        try:
            out.append(build_scene(t, p, x, tol))
        except ConcentricCircles:
            continue
    if not out:
        raise Skip("no offset in the grid has a radical axis")
    return out


def fixed_point_residuals(t: Triangle, p: HPoint, xs: Sequence[float], tol: Tolerance) -> Residuals:
    return {
        f"H' on axis x={s.x:.4g}": incidence_residual(s.h_prime, s.rad_axis, s.scale)
        for s in _scenes(t, p, xs, tol)
    }


def steiner_euler_residual(s: Scene) -> float:
    return line_residual(s.steiner_p, join(s.o_prime, s.h_prime), s.scale)


def altitude_pedals(t: Triangle) -> Triangle:
    """Feet of the circumcenter on the altitude lines AH, BH, CH."""
    o = center(t, CenterKind.CIRCUMCENTER)
    h = center(t, CenterKind.ORTHOCENTER)
    return Triangle(*(foot_of_perpendicular(o, join(v, h)) for v in t.vertices))


def altitude_pedal_residuals(t: Triangle) -> Residuals:
    o = center(t, CenterKind.CIRCUMCENTER)
    star = altitude_pedals(t)
    euler = join(center(star, CenterKind.CIRCUMCENTER), center(star, CenterKind.ORTHOCENTER))
    return {
        "steiner(O)=euler": line_residual(steiner_line(o, star), euler, t.diameter),
        "nine-point is circumcenter": distance(
            center(t, CenterKind.NINE_POINT), center(star, CenterKind.CIRCUMCENTER)
        )
        / t.diameter,
    }


def isogonal_parallel_residuals(
    t: Triangle, l: HLine, offsets: Sequence[float], tol: Tolerance = DEFAULT_TOL
) -> Residuals:
    """Conjugates of point pairs symmetric about the foot T of O on ``l``."""
    o = center(t, CenterKind.CIRCUMCENTER)
    foot = foot_of_perpendicular(o, l)
    fx, fy = foot.xy
    dx, dy = l.direction
    joins = []
    res: Residuals = {}
    t_conj = isogonal_conjugate(foot, t, tol)
    l_conj = isogonal_conjugate(HPoint.direction(dx, dy), t, tol)
    for k, s in enumerate(offsets):
        sp = HPoint(fx + s * dx, fy + s * dy)
        rp = HPoint(fx - s * dx, fy - s * dy)
        s_conj = isogonal_conjugate(sp, t, tol)
        r_conj = isogonal_conjugate(rp, t, tol)
        joins.append(join(s_conj, r_conj))
        cr = pencil_cross_ratio(t.a_vertex, t_conj, l_conj, s_conj, r_conj, tol.with_abs(1e-6))
        res[f"harmonic s={s:.4g}"] = abs(cr + 1.0)
    for k in range(1, len(joins)):
        res[f"parallel {k}"] = parallel_residual(joins[0], joins[k])
    return res


def polarity_residual(
    t: Triangle, l1: HLine, l2: HLine, x: HPoint, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Distance from the pole of ``l2`` w.r.t. the image of ``l1`` to ``X'Y'``."""
    c1 = isogonal_image_of_line(l1, t, tol)
    c2 = isogonal_image_of_line(l2, t, tol)
    y = meet(l1, polar_line(x, c2))
    xp, yp = isogonal_conjugate(x, t, tol), isogonal_conjugate(y, t, tol)
    return incidence_residual(pole_of_line(l2, c1), join(xp, yp), t.diameter)


def circumconic_center_residual(t: Triangle, l1: HLine, x: HPoint, tol: Tolerance = DEFAULT_TOL) -> float:
    """``X'Y'`` through the center of the circumconic on ``X', Y'``, with X, Y
    conjugate w.r.t. the circumcircle."""
    circ = to_conic(circumcircle(*t.vertices))
    y = meet(l1, polar_line(x, circ))
    xp, yp = isogonal_conjugate(x, t, tol), isogonal_conjugate(y, t, tol)
    conic = conic_through_5(*t.vertices, xp, yp)
    return incidence_residual(conic_center(conic), join(xp, yp), t.diameter)


def fixed_line_residuals(scenes: Sequence[Scene]) -> Residuals:
    s0 = scenes[0]
    sc = s0.scale
    res: Residuals = {}
    res["axes agree"] = max(
        (line_residual(s.rad_axis, s0.rad_axis, sc) for s in scenes[1:]), default=0.0
    )
    res["Q is foot of O'"] = max(
        distance(s.q, foot_of_perpendicular(s.o_prime, s.q_line)) / sc for s in scenes
    )
    res["P, O_P on conic"] = max(
        max(abs(s.c_conic.value(s.p)), abs(s.c_conic.value(s.o_p))) for s in scenes
    )
    res["axis perp tangent"] = max(
        perpendicular_residual(s.rad_axis, polar_line(s.o_p, s.c_conic)) for s in scenes
    )
    return res


def orthic_foot_residual(t: Triangle) -> float:
    """Orthocenter of the altitude pedals lies on A_H J."""
    a = t.a_vertex
    o = center(t, CenterKind.CIRCUMCENTER)
    a_h, b_h, c_h = orthic_triangle(t).vertices
    j = meet(join(a, o), join(b_h, c_h))
    h_star = center(altitude_pedals(t), CenterKind.ORTHOCENTER)
    return incidence_residual(h_star, join(a_h, j), t.diameter)


def bevan_residuals(s: Scene) -> Residuals:
    """For a scene with P at the Bevan point."""
    return {
        "H'=Nagel": distance(s.h_prime, s.nagel) / s.scale,
        "Be,H',O_0 collinear": collinearity_residual(s.p, s.h_prime, s.o_p, s.scale),
    }


def open_problem_residuals(t: Triangle, xs: Sequence[float], tol: Tolerance) -> Residuals:
    res: Residuals = {}
    for s in _scenes(t, center(t, CenterKind.BEVAN), xs, tol):
        res[f"I,G,N on axis x={s.x:.4g}"] = max(
            incidence_residual(p, s.rad_axis, s.scale) for p in (s.i, s.centroid, s.nagel)
        )
    return res


# --- samplers ---------------------------------------------------------------


def _circumdisk_point(rng: np.random.Generator, t: Triangle) -> HPoint:
    circ = circumcircle(*t.vertices)
    ox, oy = circ.center.xy
    r = circ.radius
    i = center(t, CenterKind.INCENTER)
    for _ in range(1000):
        rad = r * math.sqrt(rng.uniform())
        th = rng.uniform(0.0, 2.0 * math.pi)
        p = HPoint(ox + rad * math.cos(th), oy + rad * math.sin(th))
        if abs(power_of_point(p, circ)) < POWER_MARGIN * circ.r_sq:
            continue
        if distance(p, i) < INCENTER_MARGIN * t.diameter:
            continue
        return p
    raise Skip("no admissible P")


def _io_point(rng: np.random.Generator, t: Triangle, cfg: TrialConfig) -> HPoint:
    i = center(t, CenterKind.INCENTER)
    o = center(t, CenterKind.CIRCUMCENTER)
    if distance(i, o) < IO_MARGIN * t.diameter:
        raise Skip("incenter and circumcenter nearly coincide")
    circ = circumcircle(*t.vertices)
    for _ in range(100):
        p = lerp(i, o, float(rng.uniform(*cfg.t_range)))
        if abs(power_of_point(p, circ)) >= POWER_MARGIN * circ.r_sq:
            return p
    raise Skip("P too close to the circumcircle")


def _random_line(rng: np.random.Generator, t: Triangle) -> HLine:
    for _ in range(1000):
        p, q = (HPoint(*rng.uniform(0.0, 10.0, size=2)) for _ in range(2))
        if distance(p, q) < 1.0:
            continue
        l = join(p, q)
        if min(line_residual(l, side, t.diameter) for side in t.sidelines) < 0.05:
            continue
        return l
    raise Skip("no admissible line")


def _grid(t: Triangle, cfg: TrialConfig) -> List[float]:
    return [f * t.inradius for f in cfg.x_grid]


# --- trial functions --------------------------------------------------------

Trial = Callable[[int, np.random.Generator, TrialConfig], Residuals]


def _trial_equidistant(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    u = float(rng.uniform(0.0, min(t.sides) / 2))
    if u == 0.0:
        raise Skip("zero offset")
    return equidistant_residuals(t, u)


def _interior_pair(rng, t):
    for _ in range(1000):
        bary = rng.dirichlet([1.0, 1.0, 1.0])
        if bary.min() > 0.01:
            p = from_barycentric(Barycentric(*bary), t)
            return p, isogonal_conjugate(p, t)
    raise Skip("no interior point")


def _trial_metric(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p, q = _interior_pair(rng, t)
    return {"R_PQ^2 identity": metric_identity_residual(t, p, q)}


def _trial_metric_abs(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p, q = _interior_pair(rng, t)
    return {"R_PQ^2 identity, |R^2-OH^2|": metric_identity_abs_residual(t, p, q)}


def _trial_orthology(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p = _circumdisk_point(rng, t)
    x = float(rng.choice(cfg.x_grid)) * t.inradius
    return orthology_residuals(build_scene(t, p, x, cfg.tol))


def _trial_fixed_point(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p = _circumdisk_point(rng, t)
    return fixed_point_residuals(t, p, _grid(t, cfg), cfg.tol)


def _trial_steiner_euler(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p = _io_point(rng, t, cfg)
    s = build_scene(t, p, _grid(t, cfg)[0], cfg.tol)
    res = {"steiner=euler": steiner_euler_residual(s)}
    for _ in range(100):
        other = draw_triangle(rng)
        if not _right_or_regular(other):
            res.update(altitude_pedal_residuals(other))
            return res
    raise Skip("altitude pedals undefined")


def _right_or_regular(t: Triangle) -> bool:
    o = center(t, CenterKind.CIRCUMCENTER)
    h = center(t, CenterKind.ORTHOCENTER)
    if distance(o, h) < IO_MARGIN * t.diameter:
        return True
    return min(distance(v, h) for v in t.vertices) < IO_MARGIN * t.diameter


def _admissible_pair(rng, t: Triangle):
    """Line, foot of O and two offsets whose samples avoid sidelines and circle."""
    circ = circumcircle(*t.vertices)
    foot_src = circ.center
    for _ in range(100):
        l = _random_line(rng, t)
        s_a, s_b = (float(v) for v in rng.uniform(0.5, 3.0, size=2))
        if abs(s_a - s_b) < 0.1:
            continue
        fx, fy = foot_of_perpendicular(foot_src, l).xy
        dx, dy = l.direction
        pts = [HPoint(fx + s * dx, fy + s * dy) for s in (0.0, s_a, -s_a, s_b, -s_b)]
        if any(abs(power_of_point(pt, circ)) < POWER_MARGIN * circ.r_sq for pt in pts):
            continue
        if any(
            point_line_distance(pt, side) < 0.01 * t.diameter for pt in pts for side in t.sidelines
        ):
            continue
        return l, (s_a, s_b)
    raise Skip("no admissible line")


def _trial_isogonal_parallel(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    l, offsets = _admissible_pair(rng, t)
    return isogonal_parallel_residuals(t, l, offsets, cfg.tol)


def _trial_polarity(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    l1, l2 = _random_line(rng, t), _random_line(rng, t)
    x = l1.point_at(float(rng.uniform(-10.0, 10.0)))
    c2 = isogonal_image_of_line(l2, t, cfg.tol)
    if abs(c2.value(x)) < 1e-6:
        raise Skip("X on the conic")
    x_cor = l1.point_at(float(rng.uniform(-10.0, 10.0)))
    return {
        "pole on X'Y'": polarity_residual(t, l1, l2, x, cfg.tol),
        "center on X'Y'": circumconic_center_residual(t, l1, x_cor, cfg.tol),
    }


def _trial_fixed_line(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    p = _io_point(rng, t, cfg)
    return fixed_line_residuals(_scenes(t, p, _grid(t, cfg), cfg.tol))


def _trial_bevan_structure(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    be = center(t, CenterKind.BEVAN)
    res = bevan_residuals(build_scene(t, be, _grid(t, cfg)[0], cfg.tol))
    res["H* on A_H J"] = orthic_foot_residual(draw_triangle(rng, acute=True))
    return res


def _trial_open_problem(index, rng, cfg):
    t = sample_triangle(cfg.seed, index)
    return open_problem_residuals(t, _grid(t, cfg), cfg.tol)


def _trial_io_probe(index, rng, cfg):
    # exploratory: is the fixed axis for other P on IO the Nagel line?
    t = sample_triangle(cfg.seed, index)
    p = _io_point(rng, t, cfg)
    s = build_scene(t, p, _grid(t, cfg)[0], cfg.tol)
    return {"axis = Nagel line": line_residual(s.rad_axis, join(s.i, s.nagel), s.scale)}


@dataclass(frozen=True)
class CheckSpec:
    id: str
    trial: Trial
    tol_factor: float = 1.0
    default: bool = True
    aliases: Tuple[str, ...] = ()


CHECKS: Dict[str, CheckSpec] = {
    c.id: c
    for c in (
        CheckSpec("equidistant_arc_midpoint", _trial_equidistant, aliases=("P2.1",)),
        CheckSpec("metric_identity", _trial_metric, aliases=("P2.2",)),
        CheckSpec("orthology_lemmas", _trial_orthology, aliases=("L2.2", "L2.3")),
        CheckSpec("fixed_point", _trial_fixed_point, aliases=("T2.1",)),
        CheckSpec("steiner_euler", _trial_steiner_euler, aliases=("P3.1", "L3.2")),
        CheckSpec("isogonal_parallel", _trial_isogonal_parallel, aliases=("P3.2",)),
        CheckSpec("polarity", _trial_polarity, tol_factor=10.0, aliases=("P3.3", "C3.2.1")),
        CheckSpec("fixed_line", _trial_fixed_line, aliases=("T3.1", "P3.4", "C3.2.2")),
        CheckSpec("bevan_structure", _trial_bevan_structure, aliases=("P4.1", "L4.1", "P4.2")),
        CheckSpec("open_problem", _trial_open_problem, aliases=("T1.1",)),
        # probes: not part of the default catalog
        CheckSpec("metric_identity_abs", _trial_metric_abs, default=False),
        CheckSpec("io_nagel_probe", _trial_io_probe, default=False),
    )
}

ALIASES: Dict[str, str] = {a: c.id for c in CHECKS.values() for a in c.aliases}


def default_ids() -> List[str]:
    return [c.id for c in CHECKS.values() if c.default]


def resolve(check_id: str) -> CheckSpec:
    key = ALIASES.get(check_id, check_id)
    if key not in CHECKS:
        raise UnknownCheckId(check_id)
    return CHECKS[key]


def run_check(check_id: str, cfg: TrialConfig) -> CheckReport:
    """Run ``cfg.trials`` trials; the report carries ``check_id`` as given."""
    spec = resolve(check_id)
    tol = cfg.tol.abs_tol * spec.tol_factor
    stream = stream_id(spec.id)
    worst = 0.0
    skipped = 0
    failures: List[Failure] = []
    for index in range(cfg.trials):
        rng = trial_rng(cfg.seed, index, stream)
        try:
            res = spec.trial(index, rng, cfg)
        except Skip:
            skipped += 1
            continue
        except GeometryError as exc:
            failures.append(Failure(index, None, f"{exc.name}: {exc}"))
            continue
        value, name = _worst(res)
        if not math.isfinite(value):
            failures.append(Failure(index, None, f"{name}: non-finite residual"))
            continue
        worst = max(worst, value)
        if value > tol:
            failures.append(Failure(index, value, f"{name} residual {value:.3e} > {tol:.1e}"))
    failures.sort(key=lambda f: f.index)
    return CheckReport(
        id=check_id,
        trials=cfg.trials,
        max_residual=worst,
        tolerance=tol,
        passed=not failures,
        failures=failures,
        skipped=skipped,
    )


def run_suite(ids: Sequence[str], cfg: TrialConfig) -> List[CheckReport]:
    for i in ids:
        resolve(i)
    return [run_check(i, cfg) for i in ids]
