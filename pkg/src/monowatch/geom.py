"""Planar primitives and predicates shared by every other module.

All arithmetic is double precision with two explicit tolerances:
``TAU_ORIENT`` for signed-area comparisons and ``TAU_ONEDGE`` for
point-on-segment distances.  Exact arithmetic is out of scope; inputs
are expected at desk scale (coordinates of magnitude ~1e3 or less).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

TAU_ORIENT = 1e-9
TAU_ONEDGE = 1e-7

# Degenerate chord queries (the chord line meets a second polygon vertex)
# are retried after perturbing the query angle by this many degrees.
CHORD_NUDGE_DEG = 1e-7


class GeometryError(ValueError):
    """Invalid geometric input or an operation outside its contract."""


class EventAngleError(GeometryError):
    """Raised when an operation is asked to solve at a critical angle.

    Carries enough context for callers to name the event and suggest
    nearby angles instead.
    """

    def __init__(self, message: str, *, angle: Optional[float] = None,
                 kind: str = "", witness: tuple = ()):  # noqa: D401
        super().__init__(message)
        self.angle = angle
        self.kind = kind
        self.witness = witness


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point

    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2.0, (self.a.y + self.b.y) / 2.0)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def direction(self) -> Point:
        """Unit vector from a to b."""
        dx = self.b.x - self.a.x
        dy = self.b.y - self.a.y
        n = math.hypot(dx, dy)
        if n <= 0.0:
            raise GeometryError("degenerate segment has no direction")
        return Point(dx / n, dy / n)


def normalize_deg(value: float) -> float:
    """Map an angle in degrees into [0, 180)."""
    v = math.fmod(value, 180.0)
    if v < 0.0:
        v += 180.0
    if v >= 180.0:  # fmod can round up to 180 for inputs just below a multiple
        v -= 180.0
    return v + 0.0  # normalize -0.0


@dataclass(frozen=True)
class Angle:
    """Direction of a family of parallel lines, in degrees within [0, 180)."""

    degrees: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.degrees):
            raise GeometryError("angle must be finite")
        object.__setattr__(self, "degrees", normalize_deg(self.degrees))

    @property
    def value(self) -> float:
        return self.degrees

    @property
    def radians(self) -> float:
        return math.radians(self.degrees)

    def direction(self) -> Point:
        r = self.radians
        return Point(math.cos(r), math.sin(r))

    def __float__(self) -> float:
        return self.degrees


def orient_value(p: Point, q: Point, r: Point) -> float:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p: Point, q: Point, r: Point) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if v > TAU_ORIENT:
        return 1
    if v < -TAU_ORIENT:
        return -1
    return 0


def reflect_point(p: Point, mirror: Segment) -> Point:
    """Image of p under reflection across the supporting line of mirror."""
    ax, ay = mirror.a
    dx = mirror.b.x - ax
    dy = mirror.b.y - ay
    d2 = dx * dx + dy * dy
    if d2 <= TAU_ORIENT * TAU_ORIENT:
        raise GeometryError("cannot reflect across a degenerate mirror")
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / d2
    fx = ax + t * dx
    fy = ay + t * dy
    return Point(2.0 * fx - p[0], 2.0 * fy - p[1])


def point_segment_distance(p: Point, seg: Segment) -> float:
    ax, ay = seg.a
    bx, by = seg.b
    dx = bx - ax
    dy = by - ay
    d2 = dx * dx + dy * dy
    if d2 <= 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / d2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def segments_properly_cross(p1: Point, p2: Point, q1: Point, q2: Point,
                            eps: float = TAU_ORIENT) -> bool:
    """True when the open segments cross transversally (no touch cases)."""
    d1 = orient_value(q1, q2, p1)
    d2 = orient_value(q1, q2, p2)
    d3 = orient_value(p1, p2, q1)
    d4 = orient_value(p1, p2, q2)
    return ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and \
           ((d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps))


def segment_segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point,
                                 tol: float = TAU_ONEDGE) -> Optional[Point]:
    """Intersection point of two closed segments, or None.

    Touching configurations (endpoint on the other segment) count; for
    collinear overlaps the point closest to p1 is returned.
    """
    rx = p2[0] - p1[0]
    ry = p2[1] - p1[1]
    sx = q2[0] - q1[0]
    sy = q2[1] - q1[1]
    denom = rx * sy - ry * sx
    qpx = q1[0] - p1[0]
    qpy = q1[1] - p1[1]
    if abs(denom) > TAU_ORIENT:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        slack_t = tol / max(math.hypot(rx, ry), tol)
        slack_u = tol / max(math.hypot(sx, sy), tol)
        if -slack_t <= t <= 1.0 + slack_t and -slack_u <= u <= 1.0 + slack_u:
            return Point(p1[0] + t * rx, p1[1] + t * ry)
        return None
    # parallel: check collinear overlap
    if abs(qpx * ry - qpy * rx) > max(tol, TAU_ORIENT) * max(math.hypot(rx, ry), 1.0):
        return None
    r2 = rx * rx + ry * ry
    if r2 <= 0.0:
        return None
    t0 = (qpx * rx + qpy * ry) / r2
    t1 = t0 + (sx * rx + sy * ry) / r2
    lo, hi = min(t0, t1), max(t0, t1)
    lo = max(lo, 0.0)
    hi = min(hi, 1.0)
    if lo > hi:
        return None
    return Point(p1[0] + lo * rx, p1[1] + lo * ry)


# ---------------------------------------------------------------------------
# rigid transforms, stored as (xx, xy, yx, yy, tx, ty)

T_IDENTITY = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def t_apply(t: tuple, p: Point) -> Point:
    xx, xy, yx, yy, tx, ty = t
    return Point(xx * p[0] + xy * p[1] + tx, yx * p[0] + yy * p[1] + ty)


def t_compose(outer: tuple, inner: tuple) -> tuple:
    """Transform equal to applying inner first, then outer."""
    oxx, oxy, oyx, oyy, otx, oty = outer
    ixx, ixy, iyx, iyy, itx, ity = inner
    return (
        oxx * ixx + oxy * iyx,
        oxx * ixy + oxy * iyy,
        oyx * ixx + oyy * iyx,
        oyx * ixy + oyy * iyy,
        oxx * itx + oxy * ity + otx,
        oyx * itx + oyy * ity + oty,
    )


def t_invert(t: tuple) -> tuple:
    # linear part of a rigid transform is orthogonal, so inverse = transpose
    xx, xy, yx, yy, tx, ty = t
    return (xx, yx, xy, yy, -(xx * tx + yx * ty), -(xy * tx + yy * ty))


def t_reflection(mirror: Segment) -> tuple:
    """Reflection across the supporting line of mirror, as a transform."""
    ax, ay = mirror.a
    dx = mirror.b.x - ax
    dy = mirror.b.y - ay
    d2 = dx * dx + dy * dy
    if d2 <= TAU_ORIENT * TAU_ORIENT:
        raise GeometryError("cannot reflect across a degenerate mirror")
    # R = 2*P - I with P the projector onto the mirror direction
    xx = (dx * dx - dy * dy) / d2
    xy = 2.0 * dx * dy / d2
    # translation chosen so that mirror.a is a fixed point
    tx = ax - (xx * ax + xy * ay)
    ty = ay - (xy * ax - xx * ay)
    return (xx, xy, xy, -xx, tx, ty)


# ---------------------------------------------------------------------------
# rings (bare CCW vertex tuples, used for split regions and reduced polygons)

def ring_area(ring: Sequence[Point]) -> float:
    s = 0.0
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        s += ax * by - bx * ay
    return 0.5 * s


def ring_contains(ring: Sequence[Point], p: Point, tol: float = TAU_ONEDGE) -> int:
    """+1 strictly inside, 0 on the boundary within tol, -1 outside."""
    px, py = p
    n = len(ring)
    # boundary test first
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        dx = bx - ax
        dy = by - ay
        d2 = dx * dx + dy * dy
        if d2 <= 0.0:
            if (px - ax) * (px - ax) + (py - ay) * (py - ay) <= tol * tol:
                return 0
            continue
        t = ((px - ax) * dx + (py - ay) * dy) / d2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        ex = px - (ax + t * dx)
        ey = py - (ay + t * dy)
        if ex * ex + ey * ey <= tol * tol:
            return 0
    inside = False
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if (ay > py) != (by > py):
            xcross = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < xcross:
                inside = not inside
    return 1 if inside else -1


def _ring_locate(ring: Sequence[Point], p: Point, tol: float) -> tuple:
    """Position of a boundary point as (edge_index, param in [0,1))."""
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        if (p[0] - ax) * (p[0] - ax) + (p[1] - ay) * (p[1] - ay) <= tol * tol:
            return (i, 0.0)
    best = None
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        dx = bx - ax
        dy = by - ay
        d2 = dx * dx + dy * dy
        if d2 <= 0.0:
            continue
        t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / d2
        if t < 0.0 or t > 1.0:
            continue
        ex = p[0] - (ax + t * dx)
        ey = p[1] - (ay + t * dy)
        d = ex * ex + ey * ey
        if d <= tol * tol and (best is None or d < best[0]):
            best = (d, (i, t))
    if best is None:
        raise GeometryError(f"point {p} does not lie on the ring boundary")
    return best[1]


def split_ring(ring: Sequence[Point], a: Point, b: Point,
               tol: float = TAU_ONEDGE) -> tuple:
    """Split a CCW ring along the chord a-b into two CCW rings.

    Returns (left, right) where left is the component locally to the
    left of the directed chord a->b: its boundary runs counterclockwise
    from b around to a and is closed by the chord edge a->b.  Both chord
    endpoints must lie on the ring boundary.
    """
    n = len(ring)
    ka = sum(_ring_locate(ring, a, tol))
    kb = sum(_ring_locate(ring, b, tol))
    # cyclic position keys: vertex i sits at key i, an interior point of
    # edge i at key i + t
    span_ba = (ka - kb) % n
    span_ab = (kb - ka) % n
    if span_ba <= 1e-12 or span_ab <= 1e-12:
        raise GeometryError("chord endpoints coincide on the ring")

    def collect(k_from, start_pt, span, end_pt):
        pts = [start_pt]
        base = int(math.floor(k_from))
        for step in range(1, n + 1):
            idx = (base + step) % n
            off = (idx - k_from) % n
            if off <= 1e-12:
                continue
            if off >= span - 1e-12:
                break
            pts.append(ring[idx])
        pts.append(end_pt)
        return pts

    def dedupe(pts):
        out: list = []
        for p in pts:
            if out and (out[-1][0] - p[0]) ** 2 + (out[-1][1] - p[1]) ** 2 <= tol * tol:
                continue
            out.append(Point(p[0], p[1]))
        while len(out) > 1 and (out[0][0] - out[-1][0]) ** 2 + (out[0][1] - out[-1][1]) ** 2 <= tol * tol:
            out.pop()
        return tuple(out)

    left = dedupe(collect(kb, b, span_ba, a))
    right = dedupe(collect(ka, a, span_ab, b))
    if len(left) < 3 or len(right) < 3:
        raise GeometryError("chord split produced a degenerate component")
    return left, right


# ---------------------------------------------------------------------------


class Polygon:
    """Simple polygon with a counterclockwise vertex ring.

    Validation merges collinear consecutive vertices, rejects duplicate
    neighbors, demands positive signed area, and checks the boundary for
    self intersection.  ``Polygon.raw`` skips all of that for rings that
    are correct by construction (split components, reduced polygons),
    which may legitimately contain collinear chains.
    """

    __slots__ = ("vertices", "merged_count", "_area", "_reflex", "_bbox",
                 "_diameter")

    def __init__(self, vertices: Sequence, validate: bool = True):
        pts = [Point(float(p[0]), float(p[1])) for p in vertices]
        for p in pts:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise GeometryError("polygon vertices must be finite")
        merged = 0
        if validate:
            pts, merged = self._sanitize(pts)
        self.vertices: tuple = tuple(pts)
        self.merged_count = merged
        self._area: Optional[float] = None
        self._reflex: Optional[tuple] = None
        self._bbox: Optional[tuple] = None
        self._diameter: Optional[float] = None
        if validate:
            self._validate()

    @classmethod
    def raw(cls, vertices: Sequence) -> "Polygon":
        return cls(vertices, validate=False)

    @staticmethod
    def _sanitize(pts):
        n = len(pts)
        if n < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        for i in range(n):
            j = (i + 1) % n
            if math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) <= TAU_ONEDGE:
                raise GeometryError(f"duplicate consecutive vertices at index {i}")
        # merge collinear consecutive vertices (repeat until stable)
        merged = 0
        changed = True
        while changed and len(pts) > 3:
            changed = False
            for i in range(len(pts)):
                a = pts[(i - 1) % len(pts)]
                b = pts[i]
                c = pts[(i + 1) % len(pts)]
                if orient(a, b, c) == 0:
                    del pts[i]
                    merged += 1
                    changed = True
                    break
        return pts, merged

    def _validate(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        if self.area <= TAU_ORIENT:
            raise GeometryError("vertex ring must be counterclockwise "
                                "(signed area is not positive)")
        v = self.vertices
        for i in range(n):
            p1, p2 = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                q1, q2 = v[j], v[(j + 1) % n]
                if segments_properly_cross(p1, p2, q1, q2):
                    raise GeometryError(
                        f"boundary self-intersection between edges {i} and {j}")
            # non-adjacent vertex sitting on an edge also breaks simplicity
            for j in range(n):
                if j == i or j == (i + 1) % n:
                    continue
                if point_segment_distance(v[j], Segment(p1, p2)) <= TAU_ONEDGE:
                    raise GeometryError(
                        f"vertex {j} lies on edge {i}; boundary is not simple")

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[i % len(self.vertices)]

    def edge(self, i: int) -> Segment:
        v = self.vertices
        return Segment(v[i % len(v)], v[(i + 1) % len(v)])

    def edges(self) -> Iterator[Segment]:
        for i in range(len(self.vertices)):
            yield self.edge(i)

    @property
    def area(self) -> float:
        if self._area is None:
            self._area = ring_area(self.vertices)
        return self._area

    @property
    def bbox(self) -> tuple:
        if self._bbox is None:
            xs = [p.x for p in self.vertices]
            ys = [p.y for p in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    @property
    def diameter(self) -> float:
        if self._diameter is None:
            x0, y0, x1, y1 = self.bbox
            self._diameter = math.hypot(x1 - x0, y1 - y0)
        return self._diameter

    @property
    def reflex_indices(self) -> tuple:
        if self._reflex is None:
            v = self.vertices
            n = len(v)
            out = []
            for i in range(n):
                if orient(v[(i - 1) % n], v[i], v[(i + 1) % n]) < 0:
                    out.append(i)
            self._reflex = tuple(out)
        return self._reflex

    def is_reflex(self, i: int) -> bool:
        return i % len(self.vertices) in self.reflex_indices

    def contains(self, p: Point, tol: float = TAU_ONEDGE) -> int:
        """+1 inside, 0 on the boundary within tol, -1 outside."""
        return ring_contains(self.vertices, p, tol)

    def find_vertex(self, p: Point, tol: float = TAU_ONEDGE) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if math.hypot(v.x - p[0], v.y - p[1]) <= tol:
                return i
        return None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Polygon({len(self.vertices)} vertices, area={self.area:.3f})"


class ChordHit(NamedTuple):
    lo: Point
    hi: Point
    edge_lo: int
    edge_hi: int
    theta_used: float  # degrees actually used (after any nudge)


def chord_through_vertex(P: Polygon, vi: int, theta: Angle,
                         diagnostics: Optional[list] = None) -> ChordHit:
    """Maximal chord of P through vertex vi in direction theta.

    The chord is the connected component, around the vertex, of the line
    clipped to the polygon; when the line enters the interior on one side
    of the vertex only, the vertex itself is the other endpoint.  When
    the line meets a second vertex or runs along an edge the angle is
    perturbed by +1e-7 degrees for this query only; the perturbation is
    appended to ``diagnostics`` when given.
    """
    n = P.n
    v = P.vertices[vi]
    base = theta.degrees
    for attempt in range(6):
        used = base + attempt * CHORD_NUDGE_DEG
        r = math.radians(used)
        ux = math.cos(r)
        uy = math.sin(r)
        degenerate = False
        offs = []
        for j, w in enumerate(P.vertices):
            if j == vi:
                offs.append(0.0)
                continue
            s = ux * (w.y - v.y) - uy * (w.x - v.x)
            # relative test: one CHORD_NUDGE_DEG step swings the line by
            # ~1.7e-9 rad, enough to clear this margin at any distance
            d = math.hypot(w.x - v.x, w.y - v.y)
            if abs(s) <= 1e-9 * d:
                degenerate = True
                break
            offs.append(s)
        if degenerate:
            continue
        crossings = []
        for i in range(n):
            j = (i + 1) % n
            if i == vi or j == vi:
                continue  # incident edges meet the line only at v itself
            sa = offs[i]
            sb = offs[j]
            if (sa > 0.0) == (sb > 0.0):
                continue
            f = sa / (sa - sb)
            a = P.vertices[i]
            b = P.vertices[j]
            px = a.x + f * (b.x - a.x)
            py = a.y + f * (b.y - a.y)
            t = ux * (px - v.x) + uy * (py - v.y)
            crossings.append((t, i, Point(px, py)))
        # a ray only counts when it leaves v into the interior wedge,
        # which runs counterclockwise from the outgoing edge direction
        # to the incoming one; a locally exterior ray ends the chord at
        # v even if it re-enters the polygon further out
        two_pi = 2.0 * math.pi
        a_next = math.atan2(P.vertices[(vi + 1) % n].y - v.y,
                            P.vertices[(vi + 1) % n].x - v.x)
        a_prev = math.atan2(P.vertices[(vi - 1) % n].y - v.y,
                            P.vertices[(vi - 1) % n].x - v.x)
        span = (a_prev - a_next) % two_pi
        ang_u = math.atan2(uy, ux)
        fwd_in = (ang_u - a_next) % two_pi < span
        bwd_in = (ang_u + math.pi - a_next) % two_pi < span
        if not fwd_in and not bwd_in:
            raise GeometryError(
                f"no chord through vertex {vi} at {used:.9f} degrees; "
                "the vertex does not admit an interior line in this direction")
        t_lo = None if bwd_in else (0.0, (vi - 1) % n, v)
        t_hi = None if fwd_in else (0.0, vi, v)
        for t, ei, pt in crossings:
            if bwd_in and t < 0.0 and (t_lo is None or t > t_lo[0]):
                t_lo = (t, ei, pt)
            elif fwd_in and t > 0.0 and (t_hi is None or t < t_hi[0]):
                t_hi = (t, ei, pt)
        if t_lo is None or t_hi is None:
            raise GeometryError(
                f"chord through vertex {vi} at {used:.9f} degrees found no "
                "boundary exit; the polygon is not simple")
        if attempt > 0 and diagnostics is not None:
            diagnostics.append(
                f"chord through vertex {vi}: angle nudged by "
                f"{attempt * CHORD_NUDGE_DEG:g} degrees to avoid a vertex hit")
        return ChordHit(t_lo[2], t_hi[2], t_lo[1], t_hi[1], used)
    raise GeometryError(
        f"chord through vertex {vi} stays degenerate after nudging; "
        "input is outside the supported general position")


def max_chord_through(P: Polygon, v, theta: Angle,
                      diagnostics: Optional[list] = None) -> Segment:
    """Maximal segment through polygon vertex v with direction theta."""
    if isinstance(v, int):
        vi = v % P.n
    else:
        vi = P.find_vertex(Point(v[0], v[1]))
        if vi is None:
            raise GeometryError(f"{v} is not a vertex of the polygon")
    hit = chord_through_vertex(P, vi, theta, diagnostics)
    return Segment(hit.lo, hit.hi)
