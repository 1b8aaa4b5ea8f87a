"""Independent checks for tours and brute-force reference minima.

Everything here is deliberately written against the problem statement
rather than against the solver: coverage is re-derived from raw cuts,
and the reference minimum discretizes gate chords and runs a min-plus
chain product over candidate visiting orders.  numpy is confined to
this module.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .cuts import ThetaCut, compute_cuts
from .gates import compute_gates
from .geom import (
    TAU_ONEDGE,
    Angle,
    EventAngleError,
    GeometryError,
    Point,
    Polygon,
    Segment,
    normalize_deg,
    point_segment_distance,
    ring_contains,
    segment_segment_intersection,
)
from .sleeve import Tour
from .solver import solve_theta

PointLike = Union[Point, Tuple[float, float]]


@dataclass
class CutCoverage:
    cut: ThetaCut
    covered: bool
    violation: float


@dataclass
class ValidationReport:
    valid: bool
    violated_cuts: List[ThetaCut] = field(default_factory=list)
    max_violation: float = 0.0
    coverage: List[CutCoverage] = field(default_factory=list)
    messages: Tuple[str, ...] = ()


def _as_points(tour: Union[Tour, Sequence[PointLike]]) -> List[Point]:
    cycle = tour.cycle if isinstance(tour, Tour) else tour
    return [Point(float(p[0]), float(p[1])) for p in cycle]


def validate_tour(P: Polygon, theta: Union[Angle, float],
                  tour: Union[Tour, Sequence[PointLike]],
                  tol: float = 1e-7,
                  edge_samples: int = 16) -> ValidationReport:
    """Check a closed tour stays inside P and covers every cut.

    A cut is covered when the tour meets the closed region left of the
    cut: some tour vertex lies in it, or some tour edge touches the
    chord.  Violations report the distance by which the tour misses the
    chord.
    """
    ang = theta if isinstance(theta, Angle) else Angle(theta)
    pts = _as_points(tour)
    if not pts:
        raise GeometryError("empty tour")
    messages: List[str] = []
    for p in pts:
        if P.contains(p, tol) < 0:
            raise GeometryError(
                f"tour vertex ({p.x:.6f},{p.y:.6f}) lies outside the polygon")
    m = len(pts)
    edges = [(pts[i], pts[(i + 1) % m]) for i in range(m)] if m > 1 else []
    inside = True
    for a, b in edges:
        for k in range(1, edge_samples):
            t = k / edge_samples
            q = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            if P.contains(q, tol) < 0:
                inside = False
                messages.append(
                    f"tour edge leaves the polygon near ({q.x:.6f},{q.y:.6f})")
                break

    cuts = compute_cuts(P, ang)
    coverage: List[CutCoverage] = []
    violated: List[ThetaCut] = []
    worst = 0.0
    from .gates import _left_ring
    cache: dict = {}
    for c in cuts:
        ring = _left_ring(P, c, cache)
        hit = any(ring_contains(ring, p, tol) >= 0 for p in pts)
        if not hit:
            for a, b in edges:
                if segment_segment_intersection(a, b, c.chord.a, c.chord.b,
                                                tol) is not None:
                    hit = True
                    break
        violation = 0.0
        if not hit:
            best = math.inf
            for p in pts:
                best = min(best, point_segment_distance(p, c.chord))
            for a, b in edges:
                leg = Segment(a, b)
                best = min(best, point_segment_distance(c.chord.a, leg),
                           point_segment_distance(c.chord.b, leg))
            violation = best
            worst = max(worst, violation)
            violated.append(c)
        coverage.append(CutCoverage(c, hit, violation))
    valid = inside and not violated
    return ValidationReport(valid, violated, worst, coverage, tuple(messages))


# ---------------------------------------------------------------------------
# discretized reference minimum


@dataclass
class ReferenceResult:
    length: float
    slack: float
    order: Tuple[int, ...]
    points: Tuple[Point, ...]


def _chord_samples(cut: ThetaCut, m: int) -> np.ndarray:
    a, b = cut.chord.a, cut.chord.b
    t = np.linspace(0.0, 1.0, m)
    return np.stack([a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)], axis=1)


def _segment_mask(P: Polygon, A: np.ndarray, B: np.ndarray,
                  pad: float = 1e-9) -> np.ndarray:
    """Which straight segments A[i] -> B[j] stay inside the polygon."""
    verts = np.array(P.vertices)
    E0 = verts
    E1 = np.roll(verts, -1, axis=0)
    mA = A.shape[0]
    mB = B.shape[0]
    ok = np.ones((mA, mB), dtype=bool)
    Ax = A[:, 0][:, None]
    Ay = A[:, 1][:, None]
    Bx = B[:, 0][None, :]
    By = B[:, 1][None, :]
    dx = Bx - Ax
    dy = By - Ay
    for k in range(len(verts)):
        px, py = E0[k]
        qx, qy = E1[k]
        ex = qx - px
        ey = qy - py
        d1 = ex * (Ay - py) - ey * (Ax - px)
        d2 = ex * (By - py) - ey * (Bx - px)
        o1 = dx * (py - Ay) - dy * (px - Ax)
        o2 = dx * (qy - Ay) - dy * (qx - Ax)
        proper = (d1 * d2 < -1e-12) & (o1 * o2 < -1e-12)
        ok &= ~proper
    # midpoints must not fall outside (catches segments through notches
    # that only touch the boundary at vertices)
    Mx = (Ax + Bx) / 2.0
    My = (Ay + By) / 2.0
    inside = np.zeros((mA, mB), dtype=bool)
    near = np.zeros((mA, mB), dtype=bool)
    for k in range(len(verts)):
        px, py = E0[k]
        qx, qy = E1[k]
        cond = (py > My) != (qy > My)
        with np.errstate(divide="ignore", invalid="ignore"):
            xcross = px + (My - py) * (qx - px) / (qy - py)
        inside ^= cond & (Mx < xcross)
        # distance of midpoints to this edge
        ex = qx - px
        ey = qy - py
        L2 = ex * ex + ey * ey
        t = ((Mx - px) * ex + (My - py) * ey) / L2
        t = np.clip(t, 0.0, 1.0)
        ddx = Mx - (px + t * ex)
        ddy = My - (py + t * ey)
        near |= (ddx * ddx + ddy * ddy) <= (10 * TAU_ONEDGE) ** 2
    ok &= inside | near
    return ok


def _minplus(D: np.ndarray, C: np.ndarray) -> np.ndarray:
    out = np.empty((D.shape[0], C.shape[1]))
    for i in range(D.shape[0]):
        out[i] = np.min(D[i][:, None] + C, axis=0)
    return out


def reference_min_tour(P: Polygon, theta: Union[Angle, float],
                       m: int = 200, max_gates: int = 4) -> ReferenceResult:
    """Brute-force near-optimal tour by discretizing gate chords.

    Touch points are restricted to a grid on each chord and consecutive
    touch points join by straight segments masked to stay inside the
    polygon; all cyclic visiting orders are tried.  The result length
    is an upper bound on the true optimum; `slack` bounds how far above
    the optimum the grid restriction alone can push it.
    """
    ang = theta if isinstance(theta, Angle) else Angle(theta)
    cuts = compute_cuts(P, ang)
    gates = compute_gates(P, cuts)
    K = len(gates)
    if K == 0:
        return ReferenceResult(0.0, 0.0, (), ())
    chords = [g.cut.chord for g in gates]
    if K == 1:
        mid = chords[0].midpoint()
        return ReferenceResult(0.0, 0.0, (0,), (mid,))
    if K > max_gates:
        raise GeometryError(f"reference oracle capped at {max_gates} gates, "
                            f"got {K}")
    grids = [_chord_samples(g.cut, m) for g in gates]
    slack = sum(c.length() / (m - 1) for c in chords)

    masks: dict = {}

    def cost(i: int, j: int) -> np.ndarray:
        key = (i, j)
        if key not in masks:
            A, B = grids[i], grids[j]
            d = np.hypot(A[:, 0][:, None] - B[:, 0][None, :],
                         A[:, 1][:, None] - B[:, 1][None, :])
            mask = _segment_mask(P, A, B)
            d = np.where(mask, d, np.inf)
            masks[key] = d
        return masks[key]

    if K == 2:
        orders = [(0, 1)]
    else:
        seen = set()
        orders = []
        for rest in itertools.permutations(range(1, K)):
            o = (0,) + rest
            canon = min(o, (0,) + tuple(reversed(rest)))
            if canon not in seen:
                seen.add(canon)
                orders.append(o)

    best = math.inf
    best_order: Tuple[int, ...] = ()
    best_points: Tuple[Point, ...] = ()
    for order in orders:
        D = cost(order[0], order[1])
        trace = [D.copy()]
        for s in range(1, K - 1):
            D = _minplus(D, cost(order[s], order[s + 1]))
            trace.append(D.copy())
        total = D + cost(order[K - 1], order[0]).T
        idx = np.unravel_index(np.argmin(total), total.shape)
        val = float(total[idx])
        if val < best:
            best = val
            best_order = order
            start, end = idx
            # recover intermediate touch points by backtracking
            picks = [int(end)]
            for s in range(K - 2, 0, -1):
                prev = trace[s - 1][start]
                step = cost(order[s], order[s + 1])[:, picks[-1]]
                picks.append(int(np.argmin(prev + step)))
            picks.append(int(start))
            picks.reverse()
            best_points = tuple(Point(*grids[order[s]][picks[s]])
                                for s in range(K))
    if math.isinf(best):
        raise GeometryError("no feasible straight-line tour on the grid")
    return ReferenceResult(best, slack, best_order, best_points)


# ---------------------------------------------------------------------------
# sweeps and corpora


def dense_sweep(P: Polygon, step_deg: float = 0.25,
                lo: float = 0.0, hi: float = 180.0) -> List[Tuple[float, float]]:
    """Solve on a simple grid of angles, nudging off event angles."""
    out: List[Tuple[float, float]] = []
    k = 0
    while True:
        theta = lo + k * step_deg
        if theta >= hi - 1e-12:
            break
        length: Optional[float] = None
        for nudge in (0.0, 1e-5, -1e-5, 3e-5):
            try:
                res = solve_theta(P, Angle(theta + nudge))
                length = res.tour.length
                break
            except EventAngleError:
                continue
        if length is not None:
            out.append((normalize_deg(theta), length))
        k += 1
    return out


def jittered_circle_polygon(n: int, seed: int, radius: float = 10.0,
                            jitter: float = 0.45,
                            min_sep: float = 0.05) -> Polygon:
    """Random star-shaped polygon: jittered radii at sorted angles.

    Radial construction keeps the ring simple and counterclockwise for
    free; enough jitter produces reflex vertices.
    """
    rng = random.Random(seed)
    for _ in range(200):
        angs = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n))
        gaps = [angs[(i + 1) % n] - angs[i] for i in range(n - 1)]
        gaps.append(2.0 * math.pi - (angs[-1] - angs[0]))
        if min(gaps) < min_sep:
            continue
        pts = []
        for a in angs:
            r = radius * (1.0 + rng.uniform(-jitter, jitter))
            pts.append(Point(r * math.cos(a), r * math.sin(a)))
        try:
            return Polygon(pts)
        except GeometryError:
            continue
    raise GeometryError("failed to generate a polygon")
