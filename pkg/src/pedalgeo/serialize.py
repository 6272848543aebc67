"""JSON documents for scenes and check reports.

Numbers use Python's shortest round-trip float repr and keys are sorted, so
documents are diffable and parse back to the exact same doubles.
"""
from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List

from .checks import CheckReport, Failure
from .circles import Circle, circumcircle
from .projective import join
from .scene import Scene


def _xy(p) -> List[float]:
    x, y = p.xy
    return [x, y]


def _circle(c: Circle) -> Dict[str, Any]:
    return {"center": _xy(c.center), "r_sq": c.r_sq}


def scene_document(s: Scene) -> Dict[str, Any]:
    points = {name: _xy(p) for name, p in s.named_points().items() if not p.is_infinite}
    circles = {
        "A1B1C1": _circle(s.o1),
        "A2B2C2": _circle(s.o2),
        "ABC": _circle(circumcircle(*s.base.vertices)),
        "A'B'C'": _circle(circumcircle(*s.bisector_pedals.vertices)),
        "A_PB_PC_P": _circle(circumcircle(*s.pedal.vertices)),
    }
    lines = {
        "radical_axis": list(s.rad_axis.coords),
        "steiner_P": list(s.steiner_p.coords),
        "q": list(s.q_line.coords),
        "nagel_line": list(join(s.i, s.nagel).coords),
    }
    return {
        "triangle": [_xy(v) for v in s.base.vertices],
        "P": _xy(s.p),
        "x": s.x,
        "points": points,
        "circles": circles,
        "lines": lines,
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, allow_nan=False)


def dumps_scene(s: Scene, indent: int | None = 2) -> str:
    return json.dumps(scene_document(s), sort_keys=True, allow_nan=False, indent=indent)


def loads(text: str) -> Any:
    return json.loads(text)


def failure_document(f: Failure) -> Dict[str, Any]:
    return {"index": f.index, "residual": f.residual, "detail": f.detail}


def report_document(r: CheckReport) -> Dict[str, Any]:
    return {
        "id": r.id,
        "trials": r.trials,
        "max_residual": r.max_residual,
        "tolerance": r.tolerance,
        "passed": r.passed,
        "skipped": r.skipped,
        "failures": [failure_document(f) for f in r.failures],
    }


def report_lines(reports: Iterable[CheckReport]) -> str:
    """One JSON object per line."""
    return "".join(dumps(report_document(r)) + "\n" for r in reports)
