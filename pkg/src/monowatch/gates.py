"""Gate selection and reduction of the polygon along gate chords.

A gate is a cut whose left region is minimal under inclusion among all
cuts at the same angle.  Touring every gate chord is enough to see the
whole polygon, so the solver only keeps the part of the polygon on the
non-left side of each gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geom import (
    TAU_ONEDGE,
    Angle,
    EventAngleError,
    GeometryError,
    Point,
    Polygon,
    Segment,
    point_segment_distance,
    ring_area,
    ring_contains,
    split_ring,
)
from .cuts import ThetaCut

# relative slack for the area bookkeeping check in reduce_polygon
AREA_CHECK_REL = 1e-6


@dataclass(frozen=True)
class Gate:
    """A non-dominated cut, with its vertex and far edge made explicit."""

    cut: ThetaCut

    @property
    def gate_vertex(self) -> Point:
        return self.cut.vertex

    @property
    def gate_edge(self) -> int:
        return self.cut.far_edge

    @property
    def chord(self) -> Segment:
        return self.cut.chord

    def describe(self) -> str:
        return "gate from " + self.cut.describe()


def _left_ring(P: Polygon, cut: ThetaCut, cache: Optional[dict]) -> tuple:
    if cache is None:
        left, _ = split_ring(P.vertices, cut.chord.a, cut.chord.b)
        return left
    key = (cut.vertex_index, cut.kind)
    ring = cache.get(key)
    if ring is None:
        ring, _ = split_ring(P.vertices, cut.chord.a, cut.chord.b)
        cache[key] = ring
    return ring


def _chord_probes(cut: ThetaCut) -> tuple:
    a, b = cut.chord
    return (a, b, Point((a.x + b.x) / 2.0, (a.y + b.y) / 2.0))


def _chord_inside(P: Polygon, probe_cut: ThetaCut, region_cut: ThetaCut,
                  cache: Optional[dict]) -> bool:
    ring = _left_ring(P, region_cut, cache)
    return all(ring_contains(ring, q) >= 0 for q in _chord_probes(probe_cut))


def dominates(P: Polygon, c1: ThetaCut, c2: ThetaCut,
              cache: Optional[dict] = None) -> bool:
    """True when the left region of c1 is strictly inside that of c2.

    Parallel chords make strict inclusion decidable from three probe
    points per chord: c1's chord must be inside c2's region while c2's
    chord leaves c1's.  Cuts at different angles cannot be compared.
    """
    if c1.theta.degrees != c2.theta.degrees:
        raise GeometryError("cannot compare cuts at different angles")
    if c1 is c2 or (c1.vertex_index == c2.vertex_index and c1.kind == c2.kind):
        return False
    return _chord_inside(P, c1, c2, cache) and not _chord_inside(P, c2, c1, cache)


def _collinear_same_color(c1: ThetaCut, c2: ThetaCut) -> bool:
    if c1.color is not c2.color or c1.vertex_index == c2.vertex_index:
        return False
    line = Segment(c1.chord.a, c1.chord.b)
    d = line.direction()
    ax, ay = line.a
    for q in c2.chord:
        if abs(d.x * (q[1] - ay) - d.y * (q[0] - ax)) > TAU_ONEDGE:
            return False
    return True


def compute_gates(P: Polygon, cuts: Sequence[ThetaCut],
                  cache: Optional[dict] = None) -> List[Gate]:
    """Minimal cuts under left-region inclusion, in cut order.

    Two same-colored cuts from different vertices on one line make the
    minimal set ambiguous; that is a domination event and is refused.
    """
    cuts = list(cuts)
    for i, c1 in enumerate(cuts):
        for c2 in cuts[i + 1:]:
            if _collinear_same_color(c1, c2):
                raise EventAngleError(
                    f"theta={c1.theta.degrees:.9f} is a domination event: "
                    f"cuts from vertices {c1.vertex_index} and "
                    f"{c2.vertex_index} share a chord line",
                    angle=c1.theta.degrees, kind="Domination",
                    witness=(c1.vertex_index, c2.vertex_index))
    if cache is None:
        cache = {}
    out = []
    for c in cuts:
        if not any(dominates(P, other, c, cache) for other in cuts if other is not c):
            out.append(Gate(c))
    return out


@dataclass
class ReducedPolygon:
    """Polygon with every gate's left region cut away.

    ``essential`` lists, per gate, the boundary edge index of ``polygon``
    that coincides with the gate chord.  ``source`` keeps the original
    polygon so later stages can recover its reflex vertices.
    """

    polygon: Polygon
    essential: Tuple[Tuple[int, Gate], ...]
    theta: Angle
    source: Polygon
    removed_area: float = 0.0

    @property
    def essential_edges(self) -> Tuple[int, ...]:
        return tuple(e for e, _ in self.essential)


def _removal_side(left: tuple, right: tuple, other_mids: Sequence[Point]) -> str:
    if not other_mids:
        return "left"
    in_left = [ring_contains(left, m) >= 0 for m in other_mids]
    in_right = [ring_contains(right, m) >= 0 for m in other_mids]
    if not any(in_left):
        return "left"
    if not any(in_right):
        return "right"
    raise GeometryError("gate chords separate each other; reduction is "
                        "not well defined at this angle")


def reduce_polygon(P: Polygon, gates: Sequence[Gate],
                   theta: Optional[Angle] = None) -> ReducedPolygon:
    """Remove every gate's left region from P.

    The removed regions are pairwise disjoint for a consistent gate set;
    an area bookkeeping check guards that assumption.  With no gates the
    polygon is returned unchanged.
    """
    gates = list(gates)
    if theta is None:
        theta = gates[0].cut.theta if gates else Angle(0.0)
    if not gates:
        return ReducedPolygon(P, (), theta, P)

    mids = [g.chord.midpoint() for g in gates]
    removed_total = 0.0
    current = tuple(P.vertices)
    for gi, g in enumerate(gates):
        left, right = split_ring(current, g.chord.a, g.chord.b)
        side = _removal_side(left, right, mids[:gi] + mids[gi + 1:])
        removal, kept = (left, right) if side == "left" else (right, left)
        removed_total += abs(ring_area(removal))
        current = kept

    reduced = Polygon.raw(current)
    if reduced.area <= TAU_ONEDGE:
        raise GeometryError("reduction removed the entire polygon")
    budget = AREA_CHECK_REL * max(1.0, P.area)
    if abs(P.area - reduced.area - removed_total) > budget:
        raise GeometryError(
            "removed gate regions overlap; area bookkeeping failed "
            f"({P.area:.9f} != {reduced.area:.9f} + {removed_total:.9f})")

    essential = []
    for g in gates:
        found = None
        for ei in range(reduced.n):
            e = reduced.edge(ei)
            if ((point_segment_distance(g.chord.a, e) <= TAU_ONEDGE and
                 point_segment_distance(g.chord.b, e) <= TAU_ONEDGE and
                 abs(e.length() - g.chord.length()) <= 10 * TAU_ONEDGE)):
                found = ei
                break
        if found is None:
            raise GeometryError(
                f"gate chord {g.describe()} is not an edge of the reduced "
                "polygon")
        essential.append((found, g))
    essential.sort(key=lambda pair: pair[0])
    return ReducedPolygon(reduced, tuple(essential), theta, P, removed_total)
