import logging
from collections import defaultdict
from itertools import product
from pathlib import Path

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from core.enums import Puncture
from core.errors import TriangulationError

logger = logging.getLogger(__name__)


class BoundaryEnd(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    boundary: int


class PunctureEnd(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    puncture: Puncture


Endpoint = BoundaryEnd | PunctureEnd


class Arc(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str
    ends: tuple[Endpoint, Endpoint]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    @property
    def is_boundary_arc(self) -> bool:
        return all(type(end) is BoundaryEnd for end in self.ends)

    def ends_at(self, end: Endpoint) -> int:
        return sum(1 for own in self.ends if own == end)


class ArcSide(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    arc: str


class SegmentSide(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    segment: tuple[int, int]

    @property
    def start(self) -> int:
        return self.segment[0]


Side = ArcSide | SegmentSide


class PlainTriangle(BaseModel):
    """Three sides in counterclockwise order."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    sides: tuple[Side, Side, Side]


class SelfFold(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    loop: str
    radius: str


class SelfFoldedTriangle(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    selffolded: SelfFold


Triangle = PlainTriangle | SelfFoldedTriangle


def segment(start: int, boundary_points: int) -> SegmentSide:
    return SegmentSide(segment=(start, start % boundary_points + 1))


def boundary(vertex: int) -> BoundaryEnd:
    return BoundaryEnd(boundary=vertex)


def puncture(name: Puncture) -> PunctureEnd:
    return PunctureEnd(puncture=name)


class DiskTriangulation(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    boundary_points: int = Field(ge=1)
    arcs: tuple[Arc, ...]
    triangles: tuple[Triangle, ...]

    @property
    def b(self) -> int:
        return self.boundary_points

    def arc_map(self) -> dict[str, Arc]:
        return {arc.id: arc for arc in self.arcs}

    @classmethod
    def load(cls, path: Path | str) -> "DiskTriangulation":
        return cls.model_validate_json(Path(path).read_bytes())

    def dump(self, path: Path | str) -> None:
        Path(path).write_text(self.model_dump_json(indent=2) + "\n")


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    subject: str
    message: str


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {violation.code for violation in self.violations}


Slot = tuple[int, int]


def slot_sides(triangle: Triangle) -> tuple[Side, Side, Side]:
    # A self-folded triangle reads loop, radius out, radius back
    if type(triangle) is SelfFoldedTriangle:
        fold = triangle.selffolded
        radius = ArcSide(arc=fold.radius)
        return (ArcSide(arc=fold.loop), radius, radius)
    return triangle.sides


class Gluing:
    """Half-edge view of a triangulation.

    Slot (t, k) is side k of triangle t. Inside a triangle slot k starts at the
    corner where slot k-1 ends, so walking `twin(prev(h))` turns around the
    origin of h.
    """

    def __init__(self, triangulation: DiskTriangulation) -> None:
        self.triangulation = triangulation
        self.arcs = triangulation.arc_map()
        self.sides = [slot_sides(triangle) for triangle in triangulation.triangles]

        self.arc_slots: dict[str, list[Slot]] = defaultdict(list)
        self.segment_slots: dict[int, list[Slot]] = defaultdict(list)
        for t, sides in enumerate(self.sides):
            for k, side in enumerate(sides):
                if type(side) is ArcSide:
                    self.arc_slots[side.arc].append((t, k))
                else:
                    self.segment_slots[side.start].append((t, k))

    def side(self, slot: Slot) -> Side:
        t, k = slot
        return self.sides[t][k]

    @staticmethod
    def prev(slot: Slot) -> Slot:
        t, k = slot
        return (t, (k - 1) % 3)

    def twin(self, slot: Slot) -> Slot:
        side = self.side(slot)
        if type(side) is not ArcSide:
            raise ValueError(f"Boundary segment {side.segment} has no twin")
        first, second = self.arc_slots[side.arc]
        return second if slot == first else first

    def touches(self, t: int, name: Puncture) -> bool:
        end = puncture(name)
        return any(
            self.arcs[side.arc].ends_at(end)
            for side in self.sides[t]
            if type(side) is ArcSide
        )

    def arc_ends_around(self, vertex: int) -> list[str]:
        """Arc ids met turning around a boundary vertex, segment to segment."""
        (slot,) = self.segment_slots[vertex]
        met: list[str] = []

        for _ in range(2 * len(self.triangulation.arcs) + 1):
            before = self.prev(slot)
            side = self.side(before)
            if type(side) is SegmentSide:
                return met
            met.append(side.arc)
            slot = self.twin(before)

        raise TriangulationError(f"Walk around vertex {vertex} does not close")


def _side_directions(
    side: Side, arcs: dict[str, Arc]
) -> list[tuple[Endpoint, Endpoint]]:
    if type(side) is SegmentSide:
        start, end = side.segment
        return [(boundary(start), boundary(end))]
    first, second = arcs[side.arc].ends
    return [(first, second)] if first == second else [(first, second), (second, first)]


def corner_labels(
    triangle: PlainTriangle, arcs: dict[str, Arc]
) -> set[tuple[Endpoint, Endpoint, Endpoint]]:
    """Every consistent choice of corners for a plain triangle."""
    options = [_side_directions(side, arcs) for side in triangle.sides]
    labels = set()
    for directions in product(*options):
        if all(directions[k][1] == directions[(k + 1) % 3][0] for k in range(3)):
            labels.add(tuple(direction[0] for direction in directions))
    return labels


def validate(t: DiskTriangulation) -> ValidationReport:
    violations: list[Violation] = []

    def report(code: str, subject: str, message: str) -> None:
        violations.append(Violation(code=code, subject=subject, message=message))

    b = t.b
    arcs: dict[str, Arc] = {}
    for arc in t.arcs:
        if arc.id in arcs:
            report("duplicate-arc", arc.id, "arc id is used twice")
        arcs[arc.id] = arc
        for end in arc.ends:
            if type(end) is BoundaryEnd and not 1 <= end.boundary <= b:
                report("endpoint-range", arc.id, f"boundary vertex {end.boundary} out of 1..{b}")

    if len(t.arcs) != b + 3:
        report("arc-count", "arcs", f"{len(t.arcs)} arcs, expected {b + 3}")
    if len(t.triangles) != b + 2:
        report("triangle-count", "triangles", f"{len(t.triangles)} triangles, expected {b + 2}")

    arc_uses: dict[str, int] = defaultdict(int)
    segment_uses: dict[int, int] = defaultdict(int)
    for index, triangle in enumerate(t.triangles):
        for side in slot_sides(triangle):
            if type(side) is ArcSide:
                if side.arc not in arcs:
                    report("unknown-arc", side.arc, f"triangle {index} refers to a missing arc")
                arc_uses[side.arc] += 1
            else:
                start, end = side.segment
                if not 1 <= start <= b or end != start % b + 1:
                    where = f"segment {side.segment}"
                    report("segment-shape", where, f"triangle {index} has a malformed segment")
                segment_uses[start] += 1

        if type(triangle) is PlainTriangle:
            ids = [side.arc for side in triangle.sides if type(side) is ArcSide]
            if len(set(ids)) != len(ids):
                report("repeated-side", f"triangle {index}", "plain triangle repeats an arc")
        else:
            fold = triangle.selffolded
            loop, radius = arcs.get(fold.loop), arcs.get(fold.radius)
            if loop is not None and not loop.is_loop:
                report("selffold-loop", fold.loop, "self-folded loop is not a loop")
            elif loop is not None and radius is not None:
                base = loop.ends[0]
                others = [end for end in radius.ends if end != base]
                if radius.ends_at(base) != 1 or type(others[0]) is not PunctureEnd:
                    message = "radius must run from the loop base to a puncture"
                    report("selffold-radius", fold.radius, message)

    for vertex in range(1, b + 1):
        if segment_uses[vertex] != 1:
            report("segment-usage", f"segment {vertex}", f"used {segment_uses[vertex]} times")
    for arc_id in arcs:
        if arc_uses[arc_id] != 2:
            report("arc-usage", arc_id, f"fills {arc_uses[arc_id]} side slots, expected 2")

    # Orientation checks need well-formed references
    if not violations:
        _check_orientation(t, arcs, report)
        _check_connected(t, report)

    if violations:
        logger.debug(f"Triangulation has {len(violations)} violations")
    return ValidationReport(violations=tuple(violations))


def _check_orientation(t: DiskTriangulation, arcs: dict[str, Arc], report) -> None:
    gluing = Gluing(t)
    directions: dict[Slot, tuple[Endpoint, Endpoint]] = {}

    for index, triangle in enumerate(t.triangles):
        if type(triangle) is SelfFoldedTriangle:
            continue
        labels = corner_labels(triangle, arcs)
        if len(labels) != 1:
            problem = "no consistent" if not labels else "ambiguous"
            report("orientation", f"triangle {index}", f"{problem} counterclockwise corners")
            continue
        (corners,) = labels
        for k in range(3):
            directions[(index, k)] = (corners[k], corners[(k + 1) % 3])

    for arc_id, slots in gluing.arc_slots.items():
        if arcs[arc_id].is_loop or not all(slot in directions for slot in slots):
            continue
        first, second = (directions[slot] for slot in slots)
        if first != second[::-1]:
            report("gluing", arc_id, "both sides traverse the arc the same way")


def _check_connected(t: DiskTriangulation, report) -> None:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(t.triangles)))
    for slots in Gluing(t).arc_slots.values():
        (first, _), (second, _) = slots
        graph.add_edge(first, second)
    if graph.number_of_nodes() and not nx.is_connected(graph):
        report("disconnected", "triangles", "side-incidence graph is not connected")


def ensure_valid(t: DiskTriangulation) -> DiskTriangulation:
    result = validate(t)
    if not result.ok:
        summary = "; ".join(f"{v.code} ({v.subject})" for v in result.violations)
        raise TriangulationError(f"Invalid triangulation: {summary}", list(result.violations))
    return t


def _map_ends(arc: Arc, mapping) -> Arc:
    return Arc(id=arc.id, ends=tuple(mapping(end) for end in arc.ends))


def _rebuild(
    t: DiskTriangulation,
    boundary_points: int,
    end_map,
    side_map,
    arcs: list[Arc] | None = None,
    triangles: list[Triangle] | None = None,
) -> DiskTriangulation:
    new_arcs = [_map_ends(arc, end_map) for arc in (t.arcs if arcs is None else arcs)]
    new_triangles = []
    for triangle in t.triangles if triangles is None else triangles:
        if type(triangle) is PlainTriangle:
            triangle = PlainTriangle(sides=tuple(side_map(side) for side in triangle.sides))
        new_triangles.append(triangle)
    return DiskTriangulation(
        boundary_points=boundary_points, arcs=tuple(new_arcs), triangles=tuple(new_triangles)
    )


def rotate_labels(t: DiskTriangulation, shift: int) -> DiskTriangulation:
    b = t.b

    def move(vertex: int) -> int:
        return (vertex - 1 + shift) % b + 1

    def end_map(end: Endpoint) -> Endpoint:
        return boundary(move(end.boundary)) if type(end) is BoundaryEnd else end

    def side_map(side: Side) -> Side:
        return segment(move(side.start), b) if type(side) is SegmentSide else side

    return _rebuild(t, b, end_map, side_map)


def swap_punctures(t: DiskTriangulation) -> DiskTriangulation:
    def end_map(end: Endpoint) -> Endpoint:
        return puncture(end.puncture.other()) if type(end) is PunctureEnd else end

    return _rebuild(t, t.b, end_map, lambda side: side)


def add_ear(t: DiskTriangulation, after: int, arc_id: str) -> DiskTriangulation:
    """Insert a boundary vertex after `after`; the old segment becomes a peripheral arc."""
    b, nb = t.b, t.b + 1
    if not 1 <= after <= b:
        raise ValueError(f"Vertex {after} is not on the boundary")
    if arc_id in t.arc_map():
        raise ValueError(f"Arc id {arc_id} is taken")

    def move(vertex: int) -> int:
        return vertex if vertex <= after else vertex + 1

    def end_map(end: Endpoint) -> Endpoint:
        return boundary(move(end.boundary)) if type(end) is BoundaryEnd else end

    def side_map(side: Side) -> Side:
        if type(side) is SegmentSide:
            if side.start == after:
                return ArcSide(arc=arc_id)
            return segment(move(side.start), nb)
        return side

    ear = Arc(id=arc_id, ends=(boundary(after), boundary(after % b + 1)))
    grown = _rebuild(t, nb, end_map, side_map, arcs=[*t.arcs, ear])

    new_vertex = after + 1
    clipped = PlainTriangle(
        sides=(segment(after, nb), segment(new_vertex, nb), ArcSide(arc=arc_id))
    )
    return grown.model_copy(update={"triangles": grown.triangles + (clipped,)})


def clip_ear(t: DiskTriangulation, index: int, slot: int) -> DiskTriangulation:
    """Remove plain triangle `index` whose sides `slot` and `slot+1` are segments."""
    b = t.b
    sides = t.triangles[index].sides
    first, third = sides[slot], sides[(slot + 2) % 3]
    if type(third) is not ArcSide:
        raise ValueError("An ear needs an arc as its third side")

    removed = first.start % b + 1
    nb = b - 1

    def move(vertex: int) -> int:
        return vertex if vertex < removed else vertex - 1

    def end_map(end: Endpoint) -> Endpoint:
        return boundary(move(end.boundary)) if type(end) is BoundaryEnd else end

    def side_map(side: Side) -> Side:
        if type(side) is ArcSide and side.arc == third.arc:
            return segment(move(first.start), nb)
        if type(side) is SegmentSide:
            return segment(move(side.start), nb)
        return side

    remaining_arcs = [arc for arc in t.arcs if arc.id != third.arc]
    remaining = [tri for k, tri in enumerate(t.triangles) if k != index]
    return _rebuild(t, nb, end_map, side_map, arcs=remaining_arcs, triangles=remaining)
