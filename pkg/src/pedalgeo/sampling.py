"""Deterministic, order-independent random draws.

Every draw is keyed by ``(seed, index, stream)`` through a Philox counter-based
generator, so trial ``i`` sees the same numbers no matter which trials ran
before it or in which order.
"""
from __future__ import annotations

import math
import zlib

import numpy as np

from .projective import HPoint
from .triangles import Triangle

MIN_ANGLE = 0.25
MIN_SIDE = 1.0
BOX = 10.0
MAX_DRAWS = 10_000


def stream_id(name: str) -> int:
    """Stable 32-bit stream number for a check identifier."""
    return zlib.crc32(name.encode("utf-8"))


def trial_rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, index, stream])
    return np.random.Generator(np.random.Philox(ss))


def angles(pts) -> tuple:
    (ax, ay), (bx, by), (cx, cy) = pts
    out = []
    for (px, py), (qx, qy), (rx, ry) in (
        ((ax, ay), (bx, by), (cx, cy)),
        ((bx, by), (cx, cy), (ax, ay)),
        ((cx, cy), (ax, ay), (bx, by)),
    ):
        ux, uy, vx, vy = qx - px, qy - py, rx - px, ry - py
        out.append(abs(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)))
    return tuple(out)


def _acceptable(pts, acute: bool) -> bool:
    sides = [math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3)]
    if min(sides) < MIN_SIDE:
        return False
    ang = angles(pts)
    if min(ang) < MIN_ANGLE:
        return False
    if acute and max(ang) > math.pi / 2 - MIN_ANGLE / 5:
        return False
    return True


def draw_triangle(rng: np.random.Generator, acute: bool = False) -> Triangle:
    """Rejection-sample a well-shaped triangle in ``[0, 10]^2``."""
    for _ in range(MAX_DRAWS):
        raw = rng.uniform(0.0, BOX, size=(3, 2))
        pts = [tuple(float(c) for c in row) for row in raw]
        if _acceptable(pts, acute):
            return Triangle(*(HPoint(x, y) for x, y in pts))
    raise RuntimeError(f"no acceptable triangle after {MAX_DRAWS} draws")


def sample_triangle(seed: int, index: int) -> Triangle:
    return draw_triangle(trial_rng(seed, index, 0))
