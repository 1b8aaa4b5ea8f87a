"""Reflex vertex coloring and cut construction for a fixed direction.

For a direction theta, each reflex vertex whose incident edges both lie
strictly on one side of the line through it issues two directed cuts
along the maximal chord in that direction: a forward cut leaving the
vertex and a backward cut arriving at it.  Everything downstream (gates,
reduction, the rotating sweep) consumes these cuts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional

from .geom import (
    TAU_ONEDGE,
    TAU_ORIENT,
    Angle,
    EventAngleError,
    GeometryError,
    Point,
    Polygon,
    Segment,
    chord_through_vertex,
    ring_contains,
    split_ring,
)


class CutColor(enum.Enum):
    RED = "Red"
    BLUE = "Blue"


class CutKind(enum.Enum):
    FORWARD = "Forward"
    BACKWARD = "Backward"


class VertexClass(enum.Enum):
    """Classification of a polygon vertex against a directed line."""

    CONVEX = "Convex"
    RED = "Red"
    BLUE = "Blue"
    UNCOLORED = "Uncolored"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class ThetaCut:
    """One directed cut issued by a colored reflex vertex.

    ``chord`` runs from the issuing vertex to the far endpoint for a
    forward cut and from the far endpoint to the vertex for a backward
    cut, so the segment direction always matches the cut direction.
    ``far_edge`` is the index of the polygon edge containing the far
    endpoint.
    """

    vertex: Point
    vertex_index: int
    chord: Segment
    color: CutColor
    kind: CutKind
    theta: Angle
    far_edge: int

    @property
    def far_point(self) -> Point:
        return self.chord.b if self.kind is CutKind.FORWARD else self.chord.a

    def direction(self) -> Point:
        """Unit direction of the cut; Blue cuts run against theta."""
        u = self.theta.direction()
        return u if self.color is CutColor.RED else Point(-u.x, -u.y)

    def describe(self) -> str:
        return (f"{self.color.value} {self.kind.value} cut at vertex "
                f"{self.vertex_index} {tuple(self.vertex)}")


def _classify_direction(P: Polygon, vi: int, ux: float, uy: float) -> VertexClass:
    if not P.is_reflex(vi):
        return VertexClass.CONVEX
    v = P.vertices[vi]
    prev = P.vertices[(vi - 1) % P.n]
    nxt = P.vertices[(vi + 1) % P.n]
    s_prev = ux * (prev.y - v.y) - uy * (prev.x - v.x)
    s_next = ux * (nxt.y - v.y) - uy * (nxt.x - v.x)
    if abs(s_prev) <= TAU_ORIENT or abs(s_next) <= TAU_ORIENT:
        return VertexClass.BOUNDARY
    if s_prev < 0.0 and s_next < 0.0:
        return VertexClass.RED
    if s_prev > 0.0 and s_next > 0.0:
        return VertexClass.BLUE
    return VertexClass.UNCOLORED


def classify_vertex(P: Polygon, v, theta: Angle) -> VertexClass:
    """Color of vertex v against the directed line at angle theta.

    Red means both incident edges stay locally right of the line, Blue
    means left, Uncolored means they straddle it.  Boundary flags an
    incident edge parallel to theta, where the coloring is undefined.
    """
    if isinstance(v, int):
        vi = v % P.n
    else:
        vi = P.find_vertex(Point(v[0], v[1]))
        if vi is None:
            raise GeometryError(f"{v} is not a vertex of the polygon")
    r = theta.radians
    return _classify_direction(P, vi, math.cos(r), math.sin(r))


def compute_cuts(P: Polygon, theta: Angle,
                 diagnostics: Optional[list] = None) -> List[ThetaCut]:
    """All cuts of P at angle theta, ordered by issuing vertex index.

    Raises EventAngleError when any reflex vertex classifies as
    Boundary: theta is then a validity event and the cut structure is
    not well defined.
    """
    r = theta.radians
    ux = math.cos(r)
    uy = math.sin(r)
    out: List[ThetaCut] = []
    for vi in P.reflex_indices:
        cls = _classify_direction(P, vi, ux, uy)
        if cls is VertexClass.BOUNDARY:
            raise EventAngleError(
                f"theta={theta.degrees:.9f} is a validity event: an edge at "
                f"reflex vertex {vi} {tuple(P.vertices[vi])} is parallel to it",
                angle=theta.degrees, kind="Validity", witness=(vi,))
        if cls not in (VertexClass.RED, VertexClass.BLUE):
            continue
        color = CutColor.RED if cls is VertexClass.RED else CutColor.BLUE
        hit = chord_through_vertex(P, vi, theta, diagnostics)
        v = P.vertices[vi]
        off_lo = (hit.edge_lo - vi) % P.n
        off_hi = (hit.edge_hi - vi) % P.n
        # the forward endpoint is the chord end reached first on a
        # counterclockwise boundary walk from the vertex
        if off_lo < off_hi:
            e_f, ef_edge = hit.lo, hit.edge_lo
            e_b, eb_edge = hit.hi, hit.edge_hi
        else:
            e_f, ef_edge = hit.hi, hit.edge_hi
            e_b, eb_edge = hit.lo, hit.edge_lo
        out.append(ThetaCut(v, vi, Segment(v, e_f), color,
                            CutKind.FORWARD, theta, ef_edge))
        out.append(ThetaCut(v, vi, Segment(e_b, v), color,
                            CutKind.BACKWARD, theta, eb_edge))
    return out


def left_region(P: Polygon, cut: ThetaCut) -> tuple:
    """Closed region of P locally left of the directed cut, as a CCW ring.

    The ring walks the polygon boundary counterclockwise from the cut's
    head back to its tail and is closed by the chord itself.
    """
    left, _right = split_ring(P.vertices, cut.chord.a, cut.chord.b)
    return left


def left_region_contains(P: Polygon, cut: ThetaCut, p: Point,
                         tol: float = TAU_ONEDGE) -> bool:
    """Whether p lies in the closed left region of the cut.

    p must lie in the closed polygon; asking about outside points is a
    contract violation and raises.
    """
    p = Point(p[0], p[1])
    if P.contains(p, tol) < 0:
        raise GeometryError(f"point {tuple(p)} lies outside the polygon")
    return ring_contains(left_region(P, cut), p, tol) >= 0
