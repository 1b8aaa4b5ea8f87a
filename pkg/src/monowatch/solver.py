"""Fixed-angle solver for shortest watchman tours under one direction.

Pipeline: cuts, gates, an early exit when a single point meets every
gate region, otherwise reduction, triangulation, and one sleeve
shortest-path per candidate start vertex.  The best folded tour wins;
ties go to the earliest candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cuts import CutKind, ThetaCut, compute_cuts
from .gates import Gate, ReducedPolygon, compute_gates, reduce_polygon, _left_ring
from .geom import (
    TAU_ONEDGE,
    Angle,
    GeometryError,
    Point,
    Polygon,
    point_segment_distance,
    ring_contains,
)
from .sleeve import (
    TAG_TOL,
    Sleeve,
    Tour,
    TourTag,
    Triangulation,
    fold_back,
    shortest_path,
    triangulate,
    unroll,
)


@dataclass
class MaximalMovingSubpath:
    """Run of moving tour vertices between stable anchors.

    ``indices`` are positions in the tour cycle; for non-cyclic subpaths
    they start and end at the bounding stable vertices.  A tour with no
    stable vertex yields one subpath flagged cyclic.
    """

    indices: Tuple[int, ...]
    moving_indices: Tuple[int, ...]
    gates: Tuple[Gate, ...]
    cyclic: bool

    @property
    def moving_count(self) -> int:
        return len(self.moving_indices)


@dataclass
class SolveResult:
    tour: Tour
    cuts: Tuple[ThetaCut, ...]
    gates: Tuple[Gate, ...]
    candidates: Tuple[Point, ...]
    subpaths: Tuple[MaximalMovingSubpath, ...]
    theta: Angle
    diagnostics: Tuple[str, ...]
    common_point: Optional[Point] = None
    reduced: Optional[ReducedPolygon] = None


def _canonical_gate_order(gates: Sequence[Gate]) -> List[Gate]:
    return sorted(gates, key=lambda g: (g.cut.vertex_index,
                                        0 if g.cut.kind is CutKind.FORWARD else 1))


def _lowest_leftmost_index(P: Polygon) -> int:
    best = 0
    for i, p in enumerate(P.vertices):
        q = P.vertices[best]
        if (p.y, p.x) < (q.y, q.x):
            best = i
    return best


def _stable_or_moving_tag(P: Polygon, p: Point, gates: Sequence[Gate]) -> TourTag:
    for vi in P.reflex_indices:
        v = P.vertices[vi]
        if (v.x - p[0]) ** 2 + (v.y - p[1]) ** 2 <= TAG_TOL * TAG_TOL:
            return TourTag("stable", vertex_index=vi)
    for g in gates:
        if point_segment_distance(p, g.chord) <= TAG_TOL:
            return TourTag("moving", gate=g)
    return TourTag("stable", vertex_index=None)


def _common_tour_point(P: Polygon, gates: Sequence[Gate],
                       cache: dict) -> Optional[Point]:
    """A point of some gate chord lying in every other gate's region.

    Candidates on each chord are its endpoints, its midpoint, and any
    other chord endpoints incident to it; the first gate owning a
    feasible candidate wins, closest to its vertex end first.
    """
    rings = {}

    def in_all_others(q: Point, skip: int) -> bool:
        for j, g in enumerate(gates):
            if j == skip:
                continue
            ring = rings.get(j)
            if ring is None:
                ring = _left_ring(P, g.cut, cache)
                rings[j] = ring
            if ring_contains(ring, q) < 0:
                return False
        return True

    for gi, g in enumerate(gates):
        v = g.cut.vertex
        far = g.cut.far_point
        pts = [v, far, g.chord.midpoint()]
        for j, other in enumerate(gates):
            if j == gi:
                continue
            for q in (other.chord.a, other.chord.b):
                if point_segment_distance(q, g.chord) <= TAU_ONEDGE:
                    pts.append(Point(q[0], q[1]))
        feasible = [q for q in pts if in_all_others(q, gi)]
        if feasible:
            feasible.sort(key=lambda q: math.dist(q, v))
            return feasible[0]
    return None


def candidate_vertices(rp: ReducedPolygon) -> List[Point]:
    """Start vertices whose sleeve tours cover the optimum.

    Needs at least two essential edges; the zero and one gate cases are
    resolved before any sleeve is built.
    """
    tri = triangulate(rp)
    idxs = _candidate_indices(rp, tri, {})
    return [rp.polygon.vertices[i] for i in idxs]


def _essential_ring_order(rp: ReducedPolygon) -> List[Tuple[int, Gate]]:
    return sorted(rp.essential, key=lambda pair: pair[0])


def _arc_interior(rp: ReducedPolygon, e_from: int, e_to: int) -> List[int]:
    m = rp.polygon.n
    gap = (e_to - (e_from + 1)) % m
    return [(e_from + 1 + t) % m for t in range(1, gap)]


def _same_color_picks(rp: ReducedPolygon) -> List[int]:
    """Per boundary arc between same-colored adjacent gates, the reflex
    vertex of the source polygon farthest to the cut's left side."""
    ess = _essential_ring_order(rp)
    k = len(ess)
    poly = rp.polygon
    source = rp.source
    reflex_pts = [source.vertices[i] for i in source.reflex_indices]
    picks: List[int] = []
    for i in range(k):
        ei, gi = ess[i]
        ej, gj = ess[(i + 1) % k]
        if gi.cut.color is not gj.cut.color:
            continue
        interior = _arc_interior(rp, ei, ej)
        if not interior:
            continue
        d = gi.cut.direction()
        nx, ny = -d.y, d.x

        def is_source_reflex(idx: int) -> bool:
            p = poly.vertices[idx]
            return any((p.x - q.x) ** 2 + (p.y - q.y) ** 2 <= TAG_TOL * TAG_TOL
                       for q in reflex_pts)

        pool = [idx for idx in interior if is_source_reflex(idx)]
        if not pool:
            pool = interior
        best = pool[0]
        best_s = poly.vertices[best].x * nx + poly.vertices[best].y * ny
        for idx in pool[1:]:
            s = poly.vertices[idx].x * nx + poly.vertices[idx].y * ny
            if s > best_s + TAU_ONEDGE:
                best, best_s = idx, s
        picks.append(best)
    return picks


def _candidate_indices(rp: ReducedPolygon, tri: Triangulation,
                       sleeve_cache: Dict[int, Sleeve]) -> List[int]:
    poly = rp.polygon
    k = len(rp.essential)
    if k < 2:
        raise GeometryError("candidate generation needs at least two "
                            "essential edges")

    gates = _canonical_gate_order(g for _, g in rp.essential)
    colors = {g.cut.color for g in gates}
    if k == 2 and len(colors) == 1:
        picks = _same_color_picks(rp)
        if len(picks) == 2:
            return _dedupe(picks)

    out: List[int] = []
    for g in gates:
        for p in (g.cut.vertex, g.cut.far_point):
            vi = poly.find_vertex(p)
            if vi is None:
                raise GeometryError("gate chord endpoint is not a reduced "
                                    "polygon vertex")
            out.append(vi)
    # last bend of each endpoint's taut path before it first leaves copy 0
    for vi in list(out):
        sleeve = sleeve_cache.get(vi)
        if sleeve is None:
            sleeve = unroll(rp, tri, vi)
            sleeve_cache[vi] = sleeve
        extra = _last_vertex_before_first_mirror(sleeve)
        if extra is not None:
            wi = poly.find_vertex(extra)
            if wi is not None:
                out.append(wi)
    if k >= 3:
        out.extend(_same_color_picks(rp))
    return _dedupe(out)


def _cycle_key(tour: Tour) -> tuple:
    return tuple((round(p[0], 9), round(p[1], 9)) for p in tour.cycle)


def _dedupe(seq: Sequence[int]) -> List[int]:
    seen = set()
    out = []
    for x in seq:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _last_vertex_before_first_mirror(sleeve: Sleeve) -> Optional[Point]:
    path = shortest_path(sleeve)
    if len(path) < 2 or not sleeve.mirrors:
        return None
    from .geom import segment_segment_intersection
    mirror = sleeve.mirrors[0]
    for j in range(len(path) - 1):
        x = segment_segment_intersection(path[j], path[j + 1],
                                         mirror.a, mirror.b)
        if x is None:
            continue
        if j == 0:
            d2 = (x[0] - path[0][0]) ** 2 + (x[1] - path[0][1]) ** 2
            if d2 <= TAU_ONEDGE * TAU_ONEDGE:
                return None  # crossing starts at the source itself
            return path[0]
        return path[j]
    return None


def solve_theta(P: Polygon, theta) -> SolveResult:
    """Shortest watchman tour of P for lines of direction theta.

    Raises EventAngleError at validity and domination angles, where the
    combinatorial structure is ambiguous.
    """
    if not isinstance(theta, Angle):
        theta = Angle(float(theta))
    diag: List[str] = []
    cuts = tuple(compute_cuts(P, theta, diag))

    if not cuts:
        vi = _lowest_leftmost_index(P)
        pt = P.vertices[vi]
        tour = Tour((pt,), (TourTag("stable", vertex_index=vi),), 0.0, theta)
        return SolveResult(tour, (), (), (pt,), (), theta, tuple(diag))

    cache: dict = {}
    gates = tuple(compute_gates(P, cuts, cache))
    if not gates:
        raise GeometryError("cuts exist but no gate was selected")

    common = _common_tour_point(P, gates, cache)
    if common is not None:
        tag = _stable_or_moving_tag(P, common, gates)
        tour = Tour((common,), (tag,), 0.0, theta)
        subs = tuple(decompose_subpaths(tour))
        return SolveResult(tour, cuts, gates, (common,), subs, theta,
                           tuple(diag), common_point=common)

    rp = reduce_polygon(P, gates, theta)
    tri = triangulate(rp)
    sleeve_cache: Dict[int, Sleeve] = {}
    cand = _candidate_indices(rp, tri, sleeve_cache)

    best: Optional[Tour] = None
    tried: List[Point] = []
    for vi in cand:
        sleeve = sleeve_cache.get(vi)
        if sleeve is None:
            sleeve = unroll(rp, tri, vi)
            sleeve_cache[vi] = sleeve
        path = shortest_path(sleeve)
        tour = fold_back(sleeve, path)
        tried.append(rp.polygon.vertices[vi])
        if best is None:
            best = tour
            continue
        # break exact ties (symmetric polygons) by a canonical key so
        # the winner is a stable function of theta, not of float noise
        tie = 1e-9 * (1.0 + min(tour.length, best.length))
        if tour.length < best.length - tie:
            best = tour
        elif (tour.length < best.length + tie
                and _cycle_key(tour) < _cycle_key(best)):
            best = tour
    if best is None:
        raise GeometryError("no candidate produced a tour")
    subs = tuple(decompose_subpaths(best))
    return SolveResult(best, cuts, gates, tuple(tried), subs, theta,
                       tuple(diag), reduced=rp)


def decompose_subpaths(tour: Tour) -> List[MaximalMovingSubpath]:
    """Maximal runs of moving vertices, validated against persistence.

    Each subpath carries at most three moving vertices and consecutive
    moving vertices touch gates of different colors; violations raise
    GeometryError since downstream perturbation arguments rely on them.
    """
    n = len(tour.cycle)
    moving = [i for i, t in enumerate(tour.tags) if t.kind == "moving"]
    if not moving:
        return []
    stable = [i for i, t in enumerate(tour.tags) if t.kind == "stable"]

    def check(sub: MaximalMovingSubpath) -> MaximalMovingSubpath:
        if sub.moving_count > 3:
            raise GeometryError(
                f"moving subpath with {sub.moving_count} vertices exceeds "
                "the persistence bound of 3")
        gs = sub.gates
        pairs = list(zip(gs, gs[1:]))
        if sub.cyclic and len(gs) > 1:
            pairs.append((gs[-1], gs[0]))
        for a, b in pairs:
            if a.cut.color is b.cut.color:
                raise GeometryError(
                    "consecutive moving vertices share the gate color "
                    f"{a.cut.color.value}; persistence structure violated")
        return sub

    if not stable:
        gs = tuple(tour.tags[i].gate for i in moving)
        return [check(MaximalMovingSubpath(tuple(range(n)), tuple(moving),
                                           gs, True))]

    out: List[MaximalMovingSubpath] = []
    for si, s in enumerate(stable):
        nxt = stable[(si + 1) % len(stable)]
        idxs = [s]
        j = (s + 1) % n
        movings = []
        while j != nxt:
            idxs.append(j)
            if tour.tags[j].kind == "moving":
                movings.append(j)
            j = (j + 1) % n
        idxs.append(nxt)
        if movings:
            gs = tuple(tour.tags[i].gate for i in movings)
            out.append(check(MaximalMovingSubpath(tuple(idxs), tuple(movings),
                                                  gs, False)))
    return out
