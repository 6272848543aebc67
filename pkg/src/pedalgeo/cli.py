"""Command line: ``verify``, ``construct`` and ``figure``.

Exit codes: 0 success, 1 failed check or degenerate configuration,
2 invalid invocation.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from .checks import TrialConfig, default_ids, run_suite
from .errors import DegenerateTriangle, GeometryError, UnknownCheckId
from .projective import DEFAULT_TOL, HPoint, lerp
from .scene import Scene, build_scene
from .serialize import dumps_scene, report_lines
from .svg import LAYERS, render_svg
from .triangles import CenterKind, Triangle, center


class UsageError(Exception):
    pass


def parse_triangle(text: str) -> Triangle:
    parts = text.split()
    if len(parts) != 3:
        raise UsageError(f"expected three 'x,y' vertices, got {text!r}")
    pts = [parse_xy(p) for p in parts]
    try:
        return Triangle.from_xy(*pts)
    except DegenerateTriangle as exc:
        raise UsageError(f"triangle is degenerate: {exc}") from exc


def parse_xy(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"malformed coordinate pair {text!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise UsageError(f"non-finite coordinate pair {text!r}")
    return (x, y)


def parse_point(text: str, t: Triangle) -> HPoint:
    key = text.strip().lower()
    if key == "bevan":
        return center(t, CenterKind.BEVAN)
    if key == "incenter":
        return center(t, CenterKind.INCENTER)
    if key.startswith("io:"):
        try:
            s = float(key[3:])
        except ValueError as exc:
            raise UsageError(f"malformed io parameter {text!r}") from exc
        return lerp(center(t, CenterKind.INCENTER), center(t, CenterKind.CIRCUMCENTER), s)
    return HPoint(*parse_xy(text))


def _build(args) -> Scene:
    t = parse_triangle(args.triangle)
    p = parse_point(args.point, t)
    if not args.x >= 0:
        raise UsageError("--x must be non-negative")
    return build_scene(t, p, args.x)


def _add_construct_flags(p: argparse.ArgumentParser):
    p.add_argument("--triangle", required=True, help='vertices as "x1,y1 x2,y2 x3,y3"')
    p.add_argument("--point", required=True, help='"px,py", bevan, incenter or io:t')
    p.add_argument("--x", type=float, required=True, help="offset distance")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pedalgeo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the randomized theorem checks")
    v.add_argument("--check", action="append", metavar="ID", help="check id (repeatable)")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL.abs_tol)
    v.add_argument("--json", action="store_true", help="JSON lines instead of a table")

    c = sub.add_parser("construct", help="emit the scene as JSON")
    _add_construct_flags(c)

    f = sub.add_parser("figure", help="render the scene as SVG")
    _add_construct_flags(f)
    f.add_argument("-o", "--output", required=True)
    f.add_argument("--show", default="triangle", help="comma list of " + ", ".join(LAYERS))
    return parser


def _table(reports) -> str:
    rows = [f"{'check':<26} {'trials':>6} {'skip':>5} {'max residual':>13} {'tol':>8}  result"]
    for r in reports:
        rows.append(
            f"{r.id:<26} {r.trials:>6} {r.skipped:>5} {r.max_residual:>13.3e} "
            f"{r.tolerance:>8.1e}  {'PASS' if r.passed else 'FAIL'}"
        )
        for fail in r.failures[:5]:
            rows.append(f"    trial {fail.index}: {fail.detail}")
        if len(r.failures) > 5:
            rows.append(f"    ... {len(r.failures) - 5} more")
    return "\n".join(rows) + "\n"


def cmd_verify(args) -> int:
    if args.trials < 1 or not args.tol > 0:
        raise UsageError("--trials must be >= 1 and --tol positive")
    cfg = TrialConfig(seed=args.seed, trials=args.trials, tol=DEFAULT_TOL.with_abs(args.tol))
    ids = args.check or default_ids()
    reports = run_suite(ids, cfg)
    sys.stdout.write(report_lines(reports) if args.json else _table(reports))
    return 0 if all(r.passed for r in reports) else 1


def cmd_construct(args) -> int:
    sys.stdout.write(dumps_scene(_build(args)) + "\n")
    return 0


def cmd_figure(args) -> int:
    layers = [s.strip() for s in args.show.split(",") if s.strip()]
    bad = [l for l in layers if l not in LAYERS]
    if bad:
        raise UsageError(f"unknown layer(s): {', '.join(bad)}")
    svg = render_svg(_build(args), layers or ["triangle"])
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"verify": cmd_verify, "construct": cmd_construct, "figure": cmd_figure}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownCheckId as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
