"""Command line front end: solve, optimize, verify, sweep.

Angles travel in degrees.  Outputs are deterministic: JSON documents
use sorted keys and fixed 9-digit decimals, CSV uses LF endings.  Exit
codes: 0 success, 1 malformed input, 2 event-angle refusal, 3 failed
verification.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional, Sequence, Tuple

from .cuts import ThetaCut, compute_cuts
from .geom import (
    Angle,
    EventAngleError,
    GeometryError,
    Point,
    Polygon,
    ring_area,
)
from .oracle import dense_sweep, validate_tour
from .rotor import SweepConfig, enumerate_candidate_events, optimize
from .sleeve import Tour
from .solver import SolveResult, solve_theta

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EVENT = 2
EXIT_VERIFY = 3

# requested angles closer than this to a candidate event are refused
EVENT_WINDOW_DEG = 1e-3


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default, which collides with the
    # event-refusal code; route usage errors to exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


# ---------------------------------------------------------------------------
# input documents


def load_polygon(path: str) -> Tuple[Polygon, Optional[str]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    if isinstance(doc, list):
        raw = doc
        name = None
    elif isinstance(doc, dict):
        raw = doc.get("vertices")
        name = doc.get("name")
    else:
        raise _InputError(f"{path}: expected an object with a vertices list")
    if not isinstance(raw, list) or len(raw) < 3:
        raise _InputError(f"{path}: vertices must be a list of 3+ [x, y] "
                          "pairs")
    pts: List[Point] = []
    for i, item in enumerate(raw):
        try:
            x, y = float(item[0]), float(item[1])
        except (TypeError, ValueError, IndexError):
            raise _InputError(f"{path}: vertex {i} is not an [x, y] pair")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise _InputError(f"{path}: vertex {i} is not finite")
        pts.append(Point(x, y))
    if ring_area(pts) < 0.0:
        print(f"warning: {path}: vertices are clockwise, reversing",
              file=sys.stderr)
        pts.reverse()
    try:
        return Polygon(pts), name
    except GeometryError as exc:
        raise _InputError(f"{path}: {exc}")


def load_tour(path: str) -> List[Point]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    raw = doc
    if isinstance(doc, dict):
        for key in ("tour", "cycle", "points", "vertices"):
            if key in doc:
                raw = doc[key]
                break
        else:
            raise _InputError(f"{path}: no tour/cycle/points list found")
    if not isinstance(raw, list) or not raw:
        raise _InputError(f"{path}: tour must be a non-empty point list")
    pts: List[Point] = []
    for i, item in enumerate(raw):
        try:
            pts.append(Point(float(item[0]), float(item[1])))
        except (TypeError, ValueError, IndexError):
            raise _InputError(f"{path}: tour point {i} is not an [x, y] pair")
    return pts


# ---------------------------------------------------------------------------
# output documents


def _doc_text(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.9f}"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_doc_text(v)}"
                         for k, v in sorted(value.items()))
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_doc_text(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def emit_document(doc, path: Optional[str]) -> None:
    text = _doc_text(doc) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _point_doc(p: Point) -> list:
    return [float(p.x), float(p.y)]


def _cut_doc(c: ThetaCut) -> dict:
    return {
        "vertex_index": c.vertex_index,
        "color": c.color.value,
        "kind": c.kind.value,
        "chord": [_point_doc(c.chord.a), _point_doc(c.chord.b)],
        "far_edge": c.far_edge,
        "theta_deg": float(c.theta.degrees),
    }


def _tour_doc(tour: Tour) -> dict:
    tags = []
    for t in tour.tags:
        tags.append({
            "kind": t.kind,
            "vertex_index": t.vertex_index,
            "gate_vertex_index": (t.gate.cut.vertex_index
                                  if t.gate is not None else None),
        })
    return {
        "tour": [_point_doc(p) for p in tour.cycle],
        "tags": tags,
        "length": float(tour.length),
    }


def solve_document(res: SolveResult, name: Optional[str]) -> dict:
    doc = _tour_doc(res.tour)
    doc.update({
        "name": name,
        "theta_deg": float(res.theta.degrees),
        "cuts": [_cut_doc(c) for c in res.cuts],
        "gates": [_cut_doc(g.cut) for g in res.gates],
        "common_point": (_point_doc(res.common_point)
                         if res.common_point is not None else None),
    })
    return doc


# ---------------------------------------------------------------------------
# SVG rendering (debug aid, no byte-level contract)


def render_svg(P: Polygon, cuts: Sequence[ThetaCut],
               gates: Sequence[ThetaCut], tour: Optional[Tour],
               width: float = 640.0) -> str:
    xlo, ylo, xhi, yhi = P.bbox
    span_x = max(xhi - xlo, 1e-9)
    span_y = max(yhi - ylo, 1e-9)
    pad = 0.05 * max(span_x, span_y)
    scale = width / (span_x + 2 * pad)
    height = (span_y + 2 * pad) * scale

    def sx(x: float) -> float:
        return (x - xlo + pad) * scale

    def sy(y: float) -> float:
        # svg y grows downward
        return (yhi - y + pad) * scale

    def path(points, close: bool) -> str:
        cmds = [f"M {sx(points[0].x):.2f} {sy(points[0].y):.2f}"]
        cmds.extend(f"L {sx(p.x):.2f} {sy(p.y):.2f}" for p in points[1:])
        if close:
            cmds.append("Z")
        return " ".join(cmds)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<path d="{path(P.vertices, True)}" fill="#f7f6f2" stroke="#222" '
        'stroke-width="1.5"/>',
    ]
    for c in cuts:
        parts.append(
            f'<path d="{path([c.chord.a, c.chord.b], False)}" fill="none" '
            'stroke="#999" stroke-width="1" stroke-dasharray="6 4"/>')
    for g in gates:
        color = "#c0392b" if g.color.value == "Red" else "#2464b4"
        parts.append(
            f'<path d="{path([g.chord.a, g.chord.b], False)}" fill="none" '
            f'stroke="{color}" stroke-width="3"/>')
    if tour is not None:
        if tour.is_point():
            p = tour.cycle[0]
            parts.append(f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" '
                         'r="5" fill="#1e8449"/>')
        else:
            parts.append(
                f'<path d="{path(list(tour.cycle), True)}" fill="none" '
                'stroke="#1e8449" stroke-width="2"/>')
            for p, t in zip(tour.cycle, tour.tags):
                if t.kind == "moving":
                    parts.append(
                        f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" '
                        'r="4" fill="#e67e22"/>')
                else:
                    parts.append(
                        f'<rect x="{sx(p.x) - 3:.2f}" y="{sy(p.y) - 3:.2f}" '
                        'width="6" height="6" fill="#1e8449"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _write_svg(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _near_event(P: Polygon, theta_deg: float):
    best = None
    best_d = math.inf
    for ev in enumerate_candidate_events(P):
        d = abs(ev.angle_deg - theta_deg)
        d = min(d, 180.0 - d)
        if d < best_d:
            best_d = d
            best = ev
    if best is not None and best_d <= EVENT_WINDOW_DEG:
        return best
    return None


def _refuse(theta_deg: float, kind: str, angle_deg: float) -> int:
    lo = angle_deg - 10 * EVENT_WINDOW_DEG
    hi = angle_deg + 10 * EVENT_WINDOW_DEG
    print(f"error: theta {theta_deg:.6f} deg sits on or near a {kind} event "
          f"at {angle_deg:.6f} deg; try {lo:.6f} or {hi:.6f}",
          file=sys.stderr)
    return EXIT_EVENT


def cmd_solve(args) -> int:
    P, name = load_polygon(args.polygon)
    theta = args.theta_deg
    ev = _near_event(P, theta)
    if ev is not None:
        return _refuse(theta, ev.type.value, ev.angle_deg)
    try:
        res = solve_theta(P, Angle(theta))
    except EventAngleError as exc:
        ang = theta if exc.angle is None else float(exc.angle)
        return _refuse(theta, exc.kind or "structure", ang)
    emit_document(solve_document(res, name), args.json)
    if args.svg:
        _write_svg(args.svg, render_svg(P, res.cuts,
                                        [g.cut for g in res.gates], res.tour))
    return EXIT_OK


def _load_config(path: Optional[str]) -> SweepConfig:
    if path is None:
        return SweepConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise _InputError(f"{path}: sweep config must be an object")
    cfg = SweepConfig()
    known = {"samples_per_interval": int, "refine_tol_deg": float,
             "jump_threshold": float, "grid_fallback_step_deg": float}
    for key, val in doc.items():
        if key not in known:
            raise _InputError(f"{path}: unknown config key {key!r}")
        try:
            setattr(cfg, key, known[key](val))
        except (TypeError, ValueError):
            raise _InputError(f"{path}: config key {key!r} has a bad value")
    return cfg


def _write_csv(path: Optional[str],
               rows: Sequence[Tuple[float, float]]) -> None:
    lines = ["theta_deg,length"]
    lines.extend(f"{t:.9f},{l:.9f}" for t, l in rows)
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_optimize(args) -> int:
    P, name = load_polygon(args.polygon)
    cfg = _load_config(args.config)
    report = optimize(P, cfg)
    doc = _tour_doc(report.best_tour)
    doc.pop("length")
    doc.update({
        "name": name,
        "best_theta_deg": float(report.best_theta.degrees),
        "best_length": float(report.best_length),
        "events": [{
            "angle_deg": float(e.angle.degrees),
            "type": e.type.value,
            "witnesses": [int(w) for w in e.witnesses],
        } for e in report.events],
        "intervals": [[float(lo), float(hi)] for lo, hi in report.intervals],
        "sample_count": len(report.samples),
    })
    emit_document(doc, args.json)
    if args.csv:
        _write_csv(args.csv, report.samples)
    if args.svg:
        try:
            cuts = compute_cuts(P, report.best_theta)
        except EventAngleError:
            cuts = ()
        _write_svg(args.svg, render_svg(P, cuts, (), report.best_tour))
    return EXIT_OK


def cmd_verify(args) -> int:
    P, _ = load_polygon(args.polygon)
    pts = load_tour(args.tour)
    theta = args.theta_deg
    ev = _near_event(P, theta)
    if ev is not None:
        return _refuse(theta, ev.type.value, ev.angle_deg)
    try:
        report = validate_tour(P, Angle(theta), pts)
    except EventAngleError as exc:
        ang = theta if exc.angle is None else float(exc.angle)
        return _refuse(theta, exc.kind or "structure", ang)
    except GeometryError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if report.valid:
        print(f"valid: tour covers all {len(report.coverage)} cuts")
        return EXIT_OK
    for msg in report.messages:
        print(f"invalid: {msg}", file=sys.stderr)
    for c in report.violated_cuts:
        entry = next(e for e in report.coverage if e.cut is c)
        print(f"violated: {c.describe()} (misses by {entry.violation:.6f})",
              file=sys.stderr)
    return EXIT_VERIFY


def cmd_sweep(args) -> int:
    P, _ = load_polygon(args.polygon)
    if args.step_deg <= 0:
        raise _InputError("--step-deg must be positive")
    rows = dense_sweep(P, args.step_deg)
    _write_csv(args.csv, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="monowatch",
                     description="shortest watchman tours under "
                                 "direction-constrained visibility")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="fixed-angle tour")
    p_solve.add_argument("--polygon", required=True)
    p_solve.add_argument("--theta-deg", type=float, required=True)
    p_solve.add_argument("--json", default=None)
    p_solve.add_argument("--svg", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_opt = sub.add_parser("optimize", help="sweep all angles")
    p_opt.add_argument("--polygon", required=True)
    p_opt.add_argument("--config", default=None)
    p_opt.add_argument("--csv", default=None)
    p_opt.add_argument("--json", default=None)
    p_opt.add_argument("--svg", default=None)
    p_opt.set_defaults(func=cmd_optimize)

    p_ver = sub.add_parser("verify", help="check a tour file")
    p_ver.add_argument("--polygon", required=True)
    p_ver.add_argument("--theta-deg", type=float, required=True)
    p_ver.add_argument("--tour", required=True)
    p_ver.set_defaults(func=cmd_verify)

    p_swp = sub.add_parser("sweep", help="dense grid of solves")
    p_swp.add_argument("--polygon", required=True)
    p_swp.add_argument("--step-deg", type=float, required=True)
    p_swp.add_argument("--csv", default=None)
    p_swp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "theta_deg") and not (
            0.0 <= args.theta_deg < 180.0 and math.isfinite(args.theta_deg)):
        print("error: --theta-deg must lie in [0, 180)", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
