"""Deterministic SVG rendering of a scene.

Output is a pure function of ``(scene, layers)``: coordinates are rounded to
six decimals and elements are emitted sorted by (layer, name), so identical
inputs give identical bytes.
"""
from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .projective import HLine, HPoint, join
from .scene import Scene

LAYERS = ("triangle", "pedal", "offsets", "circles", "radical-axis", "nagel-line", "conic")
CONIC_SAMPLES = 256
PAD = 0.10

Box = Tuple[float, float, float, float]  # xmin, ymin, xmax, ymax

_STYLE = {
    "triangle": 'stroke="black" stroke-width="{w}" fill="none"',
    "pedal": 'stroke="#1f77b4" stroke-width="{w}" fill="none"',
    "offsets": 'stroke="none" fill="#d62728"',
    "circles": 'stroke="#2ca02c" stroke-width="{w}" fill="none"',
    "radical-axis": 'stroke="#9467bd" stroke-width="{w}" fill="none"',
    "nagel-line": 'stroke="#ff7f0e" stroke-width="{w}" stroke-dasharray="{d}" fill="none"',
    "conic": 'stroke="#8c564b" stroke-width="{w}" fill="none"',
}


def fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _svg_xy(x: float, y: float) -> Tuple[str, str]:
    # SVG's y axis points down
    return fmt(x), fmt(-y)


def clip_line(l: HLine, box: Box) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Segment of an infinite line inside ``box``, or None if it misses."""
    if l.is_infinite:
        return None
    a, b, c = l.euclidean()
    xmin, ymin, xmax, ymax = box
    hits = []
    if abs(b) > 1e-15:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin - 1e-9 <= y <= ymax + 1e-9:
                hits.append((x, min(max(y, ymin), ymax)))
    if abs(a) > 1e-15:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin - 1e-9 <= x <= xmax + 1e-9:
                hits.append((min(max(x, xmin), xmax), y))
    if len(hits) < 2:
        return None
    # extremal pair along the line direction
    dx, dy = -b, a
    hits.sort(key=lambda p: p[0] * dx + p[1] * dy)
    p, q = hits[0], hits[-1]
    if math.dist(p, q) == 0.0:
        return None
    return p, q


def conic_samples(scene: Scene, n: int = CONIC_SAMPLES) -> List[HPoint]:
    """Second intersections of the conic with lines through a known point.

    The pencil through vertex A' sweeps ``n`` directions over half a turn;
    the result is a rational parameterization, so points at infinity appear
    as directions rather than blowing up.
    """
    m = scene.c_conic.m
    v = np.asarray(scene.bisector_pedals.a_vertex.coords)
    out = []
    for k in range(n):
        th = math.pi * k / n
        d = np.array([math.cos(th), math.sin(th), 0.0])
        dmd = float(d @ m @ d)
        dmv = float(d @ m @ v)
        vec = dmd * v - 2.0 * dmv * d
        if np.linalg.norm(vec) == 0.0:
            continue
        out.append(HPoint.from_vec(vec))
    return out


def _bbox(points: Iterable[Tuple[float, float]]) -> Optional[Box]:
    pts = list(points)
    if not pts:
        return None
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return (min(xs), min(ys), max(xs), max(ys))


def _extent(scene: Scene, layers: Sequence[str]) -> Box:
    pts: List[Tuple[float, float]] = []
    if "triangle" in layers or not layers:
        pts += [v.xy for v in scene.base.vertices]
    if "pedal" in layers:
        pts += [v.xy for v in scene.pedal.vertices] + [scene.p.xy]
    if "offsets" in layers:
        pts += [p.xy for p in scene.offsets]
    if "circles" in layers:
        for c in (scene.o1, scene.o2):
            cx, cy = c.center.xy
            r = c.radius
            pts += [(cx - r, cy - r), (cx + r, cy + r)]
    if not pts:
        # lines and conics are unbounded; frame them by the base triangle
        pts = [v.xy for v in scene.base.vertices]
    xmin, ymin, xmax, ymax = _bbox(pts)
    w, h = xmax - xmin, ymax - ymin
    px, py = PAD * (w or 1.0), PAD * (h or 1.0)
    return (xmin - px, ymin - py, xmax + px, ymax + py)


def _segment(x1, y1, x2, y2) -> str:
    a, b = _svg_xy(x1, y1)
    c, d = _svg_xy(x2, y2)
    return f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}"/>'


def _elements(scene: Scene, layers: Sequence[str], box: Box) -> Dict[Tuple[str, str], str]:
    el: Dict[Tuple[str, str], str] = {}
    if "triangle" in layers:
        A, B, C = scene.base.vertices
        for name, (p, q) in (("AB", (A, B)), ("BC", (B, C)), ("CA", (C, A))):
            el[("triangle", name)] = _segment(*p.xy, *q.xy)
    if "pedal" in layers:
        A, B, C = scene.pedal.vertices
        for name, (p, q) in (("A_PB_P", (A, B)), ("B_PC_P", (B, C)), ("C_PA_P", (C, A))):
            el[("pedal", name)] = _segment(*p.xy, *q.xy)
    if "offsets" in layers:
        r = fmt(0.005 * max(box[2] - box[0], box[3] - box[1]))
        for name, p in zip(("A1", "A2", "B1", "B2", "C1", "C2"), scene.offsets):
            x, y = _svg_xy(*p.xy)
            el[("offsets", name)] = f'<circle cx="{x}" cy="{y}" r="{r}"/>'
    if "circles" in layers:
        for name, c in (("A1B1C1", scene.o1), ("A2B2C2", scene.o2)):
            x, y = _svg_xy(*c.center.xy)
            el[("circles", name)] = f'<circle cx="{x}" cy="{y}" r="{fmt(c.radius)}"/>'
    for layer, name, line in (
        ("radical-axis", "radical_axis", scene.rad_axis),
        ("nagel-line", "nagel_line", join(scene.i, scene.nagel)),
    ):
        if layer in layers:
            seg = clip_line(line, box)
            if seg is None:
                el[(layer, name)] = f"<!-- {name} misses the view box -->"
            else:
                el[(layer, name)] = _segment(*seg[0], *seg[1])
    if "conic" in layers:
        el.update(_conic_elements(scene, box))
    return el


def _conic_elements(scene: Scene, box: Box) -> Dict[Tuple[str, str], str]:
    xmin, ymin, xmax, ymax = box
    w, h = xmax - xmin, ymax - ymin
    # keep vertices within a generous margin; break the polyline elsewhere
    far = (xmin - 2 * w, ymin - 2 * h, xmax + 2 * w, ymax + 2 * h)
    runs: List[List[Tuple[float, float]]] = [[]]
    dropped = 0
    samples = conic_samples(scene)
    # close the curve for bounded conics
    samples = samples + samples[:1]
    for p in samples:
        if p.is_infinite:
            dropped += 1
            runs.append([])
            continue
        x, y = p.xy
        if not (far[0] <= x <= far[2] and far[1] <= y <= far[3]):
            runs.append([])
            continue
        runs[-1].append((x, y))
    out = {}
    runs = [r for r in runs if len(r) >= 2]
    for k, run in enumerate(runs):
        pts = " ".join(",".join(_svg_xy(x, y)) for x, y in run)
        out[("conic", f"c_conic_{k:03d}")] = f'<polyline points="{pts}"/>'
    if dropped:
        out[("conic", "c_conic_zz_note")] = f"<!-- {dropped} conic samples at infinity dropped -->"
    return out


def render_svg(scene: Scene, layers: Sequence[str]) -> str:
    unknown = [l for l in layers if l not in LAYERS]
    if unknown:
        raise ValueError(f"unknown layer(s): {', '.join(unknown)}")
    layers = tuple(dict.fromkeys(layers))
    box = _extent(scene, layers)
    xmin, ymin, xmax, ymax = box
    width = xmax - xmin
    stroke = fmt(0.003 * max(width, ymax - ymin))
    dash = fmt(0.02 * max(width, ymax - ymin))
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fmt(xmin)} {fmt(-ymax)} {fmt(width)} {fmt(ymax - ymin)}">\n'
    )
    elements = _elements(scene, layers, box)
    body: List[str] = []
    if not layers:
        body.append("<g/>\n")
    for layer in sorted({k[0] for k in elements}):
        style = _STYLE[layer].format(w=stroke, d=dash)
        body.append(f'<g id="{layer}" {style}>\n')
        for key in sorted(k for k in elements if k[0] == layer):
            body.append(f"  {elements[key]}\n")
        body.append("</g>\n")
    return head + "".join(body) + "</svg>\n"
