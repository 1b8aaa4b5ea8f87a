"""Triangulation, sleeve unrolling, and taut paths through the sleeve.

A tour that must visit the essential edges e_1..e_k in boundary order
is a shortest path in a stack of reflected copies of the reduced
polygon: copy i is the image of copy i-1 reflected across e_i.  The
shortest closed tour through a boundary vertex v is then the geodesic
from v in copy 0 to its image in copy k, computed by a funnel walk over
the triangle panels connecting them, and folded back into the original
polygon afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .gates import Gate, ReducedPolygon
from .geom import (
    T_IDENTITY,
    TAU_ONEDGE,
    TAU_ORIENT,
    Angle,
    GeometryError,
    Point,
    Polygon,
    Segment,
    orient_value,
    point_segment_distance,
    segment_segment_intersection,
    t_apply,
    t_compose,
    t_invert,
    t_reflection,
)

# matching tolerance for tagging tour vertices against polygon features
TAG_TOL = 1e-6


@dataclass
class Triangulation:
    """Ear-clipping triangulation of a polygon, with adjacency maps."""

    polygon: Polygon
    triangles: Tuple[Tuple[int, int, int], ...]
    neighbors: Tuple[Tuple[int, ...], ...]
    edge_tris: Dict[Tuple[int, int], Tuple[int, ...]]
    vertex_tris: Dict[int, Tuple[int, ...]]

    def triangle_points(self, ti: int) -> Tuple[Point, Point, Point]:
        a, b, c = self.triangles[ti]
        v = self.polygon.vertices
        return (v[a], v[b], v[c])

    def boundary_edge_triangle(self, ei: int) -> int:
        m = self.polygon.n
        key = _edge_key(ei, (ei + 1) % m)
        tris = self.edge_tris.get(key, ())
        if len(tris) != 1:
            raise GeometryError(f"boundary edge {ei} is not covered by "
                                "exactly one triangle")
        return tris[0]


def _edge_key(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def triangulate(rp) -> Triangulation:
    """Triangulate a reduced polygon (or a bare Polygon) by ear clipping.

    Zero-area corners from collinear boundary chains are skipped until
    they open up, which keeps reduced polygons with chord-on-chord
    chains legal.
    """
    polygon = rp.polygon if isinstance(rp, ReducedPolygon) else rp
    verts = polygon.vertices
    m = len(verts)
    if m < 3:
        raise GeometryError("cannot triangulate fewer than 3 vertices")

    ids = list(range(m))
    triangles: List[Tuple[int, int, int]] = []

    def is_ear(pos: int, strict_boundary: bool) -> bool:
        a = verts[ids[pos - 1]]
        b = verts[ids[pos]]
        c = verts[ids[(pos + 1) % len(ids)]]
        if orient_value(a, b, c) <= TAU_ORIENT:
            return False
        excluded = {ids[pos - 1], ids[pos], ids[(pos + 1) % len(ids)]}
        for other in ids:
            if other in excluded:
                continue
            w = verts[other]
            o1 = orient_value(a, b, w)
            o2 = orient_value(b, c, w)
            o3 = orient_value(c, a, w)
            if strict_boundary:
                if o1 >= -TAU_ORIENT and o2 >= -TAU_ORIENT and o3 >= -TAU_ORIENT:
                    return False
            else:
                if o1 > TAU_ORIENT and o2 > TAU_ORIENT and o3 > TAU_ORIENT:
                    return False
        return True

    while len(ids) > 3:
        clipped = False
        for strict in (True, False):
            for pos in range(len(ids)):
                if is_ear(pos, strict):
                    triangles.append((ids[pos - 1], ids[pos],
                                      ids[(pos + 1) % len(ids)]))
                    del ids[pos]
                    clipped = True
                    break
            if clipped:
                break
        if not clipped:
            raise GeometryError("ear clipping failed; the ring is not a "
                                "simple polygon")
    a, b, c = ids
    if orient_value(verts[a], verts[b], verts[c]) <= TAU_ORIENT:
        raise GeometryError("triangulation left a degenerate final triangle")
    triangles.append((a, b, c))

    edge_tris: Dict[Tuple[int, int], list] = {}
    vertex_tris: Dict[int, list] = {}
    for ti, tri in enumerate(triangles):
        for s in range(3):
            key = _edge_key(tri[s], tri[(s + 1) % 3])
            edge_tris.setdefault(key, []).append(ti)
            vertex_tris.setdefault(tri[s], []).append(ti)
    neighbors: List[Tuple[int, ...]] = []
    for ti, tri in enumerate(triangles):
        adj = []
        for s in range(3):
            key = _edge_key(tri[s], tri[(s + 1) % 3])
            for other in edge_tris[key]:
                if other != ti:
                    adj.append(other)
        neighbors.append(tuple(adj))
    return Triangulation(
        polygon,
        tuple(triangles),
        tuple(neighbors),
        {k: tuple(v) for k, v in edge_tris.items()},
        {k: tuple(v) for k, v in vertex_tris.items()},
    )


class Panel(NamedTuple):
    copy: int
    tri: int
    world: Tuple[Point, Point, Point]


class Portal(NamedTuple):
    left: Point
    right: Point
    mirror: int  # mirror index for gate crossings, -1 for plain diagonals


@dataclass
class Sleeve:
    """Unrolled corridor of triangle panels from a vertex back to itself."""

    panels: Tuple[Panel, ...]
    portals: Tuple[Portal, ...]
    mirrors: Tuple[Segment, ...]
    gates: Tuple[Gate, ...]
    transforms: Tuple[tuple, ...]
    source: Point
    image: Point
    source_index: int
    rp: ReducedPolygon


def _tree_path(tri: Triangulation, sources: Sequence[int],
               targets: Sequence[int]) -> List[int]:
    target_set = set(targets)
    parent: Dict[int, Optional[int]] = {s: None for s in sources}
    queue = list(sources)
    qi = 0
    hit = None
    for s in queue:
        if s in target_set:
            hit = s
            break
    while hit is None and qi < len(queue):
        cur = queue[qi]
        qi += 1
        for nb in tri.neighbors[cur]:
            if nb in parent:
                continue
            parent[nb] = cur
            if nb in target_set:
                hit = nb
                break
            queue.append(nb)
    if hit is None:
        raise GeometryError("triangulation dual graph is disconnected")
    path = [hit]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def unroll(rp: ReducedPolygon, tri: Triangulation, v) -> Sleeve:
    """Unroll the sleeve of panels from vertex v across every gate chord.

    Essential edges are taken in the order a counterclockwise boundary
    walk from v meets them; each one becomes a mirror and everything
    after it is reflected across the mirror's current image.
    """
    polygon = rp.polygon
    m = polygon.n
    if isinstance(v, int):
        vi = v % m
    else:
        vi = polygon.find_vertex(Point(v[0], v[1]))
        if vi is None:
            raise GeometryError(f"{v} is not a vertex of the reduced polygon")
    v_pt = polygon.vertices[vi]

    order = sorted(rp.essential, key=lambda pair: (pair[0] - vi) % m)
    if not order:
        return Sleeve((), (), (), (), (T_IDENTITY,), v_pt, v_pt, vi, rp)

    transforms = [T_IDENTITY]
    mirrors: List[Segment] = []
    for ei, _gate in order:
        e = polygon.edge(ei)
        mirror = Segment(t_apply(transforms[-1], e.a), t_apply(transforms[-1], e.b))
        mirrors.append(mirror)
        transforms.append(t_compose(t_reflection(mirror), transforms[-1]))

    v_tris = tri.vertex_tris.get(vi)
    if not v_tris:
        raise GeometryError(f"vertex {vi} belongs to no triangle")
    gate_tris = [tri.boundary_edge_triangle(ei) for ei, _ in order]

    legs: List[List[int]] = [_tree_path(tri, v_tris, [gate_tris[0]])]
    for i in range(len(order) - 1):
        legs.append(_tree_path(tri, [gate_tris[i]], [gate_tris[i + 1]]))
    legs.append(_tree_path(tri, [gate_tris[-1]], v_tris))

    panels: List[Panel] = []
    portals: List[Portal] = []
    for copy, leg in enumerate(legs):
        t = transforms[copy]
        for j, ti in enumerate(leg):
            world = tuple(t_apply(t, p) for p in tri.triangle_points(ti))
            panel = Panel(copy, ti, world)
            if panels:
                prev = panels[-1]
                if j == 0:
                    # crossing mirror `copy`: portal is the mirror segment
                    ei = order[copy - 1][0]
                    shared = (ei, (ei + 1) % m)
                    portal_pts = (mirrors[copy - 1].a, mirrors[copy - 1].b)
                    mirror_idx = copy - 1
                else:
                    shared = tuple(x for x in tri.triangles[prev.tri]
                                   if x in tri.triangles[ti])
                    if len(shared) != 2:
                        raise GeometryError("consecutive panels share no "
                                            "diagonal")
                    portal_pts = (t_apply(t, polygon.vertices[shared[0]]),
                                  t_apply(t, polygon.vertices[shared[1]]))
                    mirror_idx = -1
                ropp = next(x for x in tri.triangles[ti] if x not in shared)
                r_world = t_apply(t, polygon.vertices[ropp])
                left, right = portal_pts
                if orient_value(left, right, r_world) < 0.0:
                    left, right = right, left
                portals.append(Portal(left, right, mirror_idx))
            panels.append(panel)

    return Sleeve(tuple(panels), tuple(portals), tuple(mirrors),
                  tuple(g for _, g in order), tuple(transforms),
                  v_pt, t_apply(transforms[-1], v_pt), vi, rp)


def _dist2(a: Point, b: Point) -> float:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _orient_sin(a: Point, b: Point, c: Point) -> float:
    """Orientation of (a, b, c) normalized to the sine of the turn angle.

    Dividing the raw cross product by |ab| |ac| turns the TAU_ORIENT
    comparison into an angular tolerance, which keeps funnel decisions
    sharp inside very thin sleeves where raw cross products underflow
    an absolute threshold.
    """
    v = orient_value(a, b, c)
    s = math.dist(a, b) * math.dist(a, c)
    if s <= 0.0:
        return 0.0
    return v / s


def shortest_path(sleeve: Sleeve) -> Tuple[Point, ...]:
    """Taut path from sleeve.source to sleeve.image through the portals.

    Classic funnel walk: maintain an apex with left and right chains,
    emit the blocking chain point on crossover and restart there.
    """
    src = sleeve.source
    dst = sleeve.image
    if not sleeve.portals:
        if _dist2(src, dst) <= (TAU_ONEDGE) ** 2:
            return (src,)
        return (src, dst)

    gates_pts = [(p.left, p.right) for p in sleeve.portals]
    gates_pts.append((dst, dst))
    eps = TAU_ORIENT
    # chain points this close to the apex carry no direction, only the
    # rounding noise of the unrolling transforms
    noise2 = 1e-12 ** 2

    path: List[Point] = [src]
    apex = src
    pl, pr = src, src
    li = ri = -1
    i = 0
    guard = 0
    max_steps = 16 * (len(gates_pts) + 2) ** 2 + 64
    while i < len(gates_pts):
        guard += 1
        if guard > max_steps:
            raise GeometryError("funnel failed to converge")
        l, r = gates_pts[i]
        # tighten the right side; a portal point at the apex narrows
        # nothing and must not be judged by its rounding noise
        if (_dist2(apex, r) <= noise2 or _dist2(apex, pr) <= noise2
                or _orient_sin(apex, pr, r) >= -eps):
            if (_dist2(apex, r) <= noise2 or _dist2(apex, pl) <= noise2
                    or _orient_sin(apex, pl, r) <= eps):
                pr = r
                ri = i
            else:
                # right chain crossed the left: bend at the left point
                path.append(pl)
                apex = pl
                pl, pr = apex, apex
                i = li + 1
                li = ri = i - 1
                continue
        # tighten the left side
        if (_dist2(apex, l) <= noise2 or _dist2(apex, pl) <= noise2
                or _orient_sin(apex, pl, l) <= eps):
            if (_dist2(apex, l) <= noise2 or _dist2(apex, pr) <= noise2
                    or _orient_sin(apex, pr, l) >= -eps):
                pl = l
                li = i
            else:
                path.append(pr)
                apex = pr
                pl, pr = apex, apex
                i = ri + 1
                li = ri = i - 1
                continue
        i += 1

    if _dist2(path[-1], dst) > 0.0:
        path.append(dst)
    out: List[Point] = []
    for p in path:
        if out and _dist2(out[-1], p) <= (1e-12) ** 2:
            continue
        out.append(p)
    return tuple(out)


def path_length(points: Sequence[Point]) -> float:
    total = 0.0
    for i in range(len(points) - 1):
        total += math.dist(points[i], points[i + 1])
    return total


@dataclass(frozen=True)
class TourTag:
    """Why a tour vertex is where it is: pinned or sliding with theta."""

    kind: str  # "stable" or "moving"
    vertex_index: Optional[int] = None  # source polygon vertex for stable tags
    gate: Optional[Gate] = None  # touched gate for moving tags

    def describe(self) -> str:
        if self.kind == "stable":
            return f"stable at vertex {self.vertex_index}"
        return "moving on " + (self.gate.describe() if self.gate else "?")


@dataclass
class Tour:
    """Closed watchman tour: a weakly simple cyclic polyline with tags."""

    cycle: Tuple[Point, ...]
    tags: Tuple[TourTag, ...]
    length: float
    theta: Angle

    def is_point(self) -> bool:
        return len(self.cycle) == 1


def tour_length(cycle: Sequence[Point]) -> float:
    if len(cycle) < 2:
        return 0.0
    total = 0.0
    for i in range(len(cycle)):
        total += math.dist(cycle[i], cycle[(i + 1) % len(cycle)])
    return total


def _tag_point(p: Point, rp: ReducedPolygon, gates: Sequence[Gate]) -> TourTag:
    source = rp.source
    for vi in source.reflex_indices:
        if _dist2(source.vertices[vi], p) <= TAG_TOL * TAG_TOL:
            return TourTag("stable", vertex_index=vi)
    for g in gates:
        if point_segment_distance(p, g.chord) <= TAG_TOL:
            return TourTag("moving", gate=g)
    # non-optimal candidate tours may bend at convex polygon vertices
    for vi in range(source.n):
        if _dist2(source.vertices[vi], p) <= TAG_TOL * TAG_TOL:
            return TourTag("stable", vertex_index=vi)
    raise GeometryError(f"tour vertex {tuple(p)} is neither a polygon vertex "
                        "nor on a gate chord")


def fold_back(sleeve: Sleeve, path: Sequence[Point]) -> Tour:
    """Map a sleeve path back into the polygon as a closed tagged tour.

    The path is cut at its crossing with each mirror in order; piece j
    is mapped by the inverse of the j-th accumulated reflection.  Points
    are tagged stable when they sit on a reflex vertex of the source
    polygon and moving when they sit on a gate chord.
    """
    theta = sleeve.rp.theta
    gates = sleeve.gates
    points = [Point(p[0], p[1]) for p in path]
    if not points:
        raise GeometryError("cannot fold an empty path")

    k = len(sleeve.mirrors)
    if k == 0 or len(points) == 1:
        p0 = points[0]
        for m in sleeve.mirrors:
            if point_segment_distance(p0, m) > TAU_ONEDGE:
                raise GeometryError("degenerate path misses a mirror")
        tag = _tag_point(p0, sleeve.rp, gates)
        return Tour((p0,), (tag,), 0.0, theta)

    # locate the ordered mirror crossings along the polyline
    cross: List[Tuple[int, float, Point]] = []
    si, st = 0, 0.0
    for mi, mirror in enumerate(sleeve.mirrors):
        found = None
        j = si
        while j < len(points) - 1:
            p, q = points[j], points[j + 1]
            x = segment_segment_intersection(p, q, mirror.a, mirror.b)
            if x is not None:
                seg2 = _dist2(p, q)
                t = 0.0 if seg2 <= 0.0 else (
                    ((x[0] - p[0]) * (q[0] - p[0]) +
                     (x[1] - p[1]) * (q[1] - p[1])) / seg2)
                if j > si or t >= st - 1e-9:
                    found = (j, max(t, st if j == si else 0.0), x)
                    break
            j += 1
        if found is None:
            raise GeometryError(
                f"sleeve path never crosses mirror {mi}; the funnel output "
                "is inconsistent")
        cross.append(found)
        si, st, _ = found

    # cut into k+1 pieces and push each one back through its transform
    pieces: List[List[Point]] = []
    start = points[0]
    si, st = 0, 0.0
    for j, t, x in cross:
        piece = [start]
        piece.extend(points[si + 1:j + 1])
        piece.append(x)
        pieces.append(piece)
        start = x
        si, st = j, t
    tail = [start]
    tail.extend(points[si + 1:])
    pieces.append(tail)

    folded: List[Point] = []
    for copy, piece in enumerate(pieces):
        inv = t_invert(sleeve.transforms[copy])
        mapped = [t_apply(inv, p) for p in piece]
        if copy > 0 and folded:
            joint = mapped[0]
            if _dist2(folded[-1], joint) > (10 * TAU_ONEDGE) ** 2:
                raise GeometryError("mirror crossing folds to inconsistent "
                                    "joints; path exits the sleeve")
        folded.extend(mapped if not folded else mapped[1:])

    # close the cycle: drop the duplicated return to the source vertex
    dedup: List[Point] = []
    for p in folded:
        if dedup and _dist2(dedup[-1], p) <= (1e-9) ** 2:
            continue
        dedup.append(p)
    while len(dedup) > 1 and _dist2(dedup[0], dedup[-1]) <= (1e-9) ** 2:
        dedup.pop()

    cycle = tuple(dedup)
    tags = tuple(_tag_point(p, sleeve.rp, gates) for p in cycle)
    return Tour(cycle, tags, tour_length(cycle), theta)
