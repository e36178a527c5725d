import logging
from collections import Counter

import networkx as nx
from pydantic import BaseModel, ConfigDict

from core.enums import CaseTag, Letter, Puncture
from core.errors import TriangulationError
from core.fence import CyclicWord, Digraph, FenceWord, ideal_count, invert
from core.frieze import Quiddity
from surface.triangulation import (
    ArcSide,
    BoundaryEnd,
    DiskTriangulation,
    Gluing,
    PlainTriangle,
    SegmentSide,
    SelfFoldedTriangle,
    clip_ear,
    puncture,
)

logger = logging.getLogger(__name__)


class Classification(BaseModel):
    """Case of a peripheral-free triangulation and its puncture degrees.

    In case III the loop is normalized to sit at the puncture counted by `p`;
    `loop_puncture` names it.
    """

    model_config = ConfigDict(frozen=True)

    case: CaseTag
    p: int
    q: int
    loop_puncture: Puncture | None = None


def _find_ear(t: DiskTriangulation) -> tuple[int, int] | None:
    for index, triangle in enumerate(t.triangles):
        if type(triangle) is not PlainTriangle:
            continue
        for slot in range(3):
            first, second = triangle.sides[slot], triangle.sides[(slot + 1) % 3]
            if type(first) is SegmentSide and type(second) is SegmentSide:
                return index, slot
    return None


def strip_peripheral(t: DiskTriangulation) -> DiskTriangulation:
    clipped = 0
    while t.b > 1 and (ear := _find_ear(t)) is not None:
        t = clip_ear(t, *ear)
        clipped += 1

    if clipped:
        logger.debug(f"Clipped {clipped} ears, {t.b} boundary points remain")
    return t


def puncture_degree(t: DiskTriangulation, name: Puncture) -> int:
    end = puncture(name)
    return sum(arc.ends_at(end) for arc in t.arcs)


def classify(t: DiskTriangulation) -> Classification:
    connecting = [
        arc
        for arc in t.arcs
        if set(arc.ends) == {puncture(Puncture.P), puncture(Puncture.Q)}
    ]
    p = puncture_degree(t, Puncture.P)
    q = puncture_degree(t, Puncture.Q)

    if not connecting:
        if p < 1 or q < 1:
            raise TriangulationError(f"Case I needs arcs at both punctures, got p={p}, q={q}")
        result = Classification(case=CaseTag.I, p=p, q=q)

    elif len(connecting) > 1:
        raise TriangulationError("More than one arc joins P and Q")

    else:
        (gamma,) = connecting
        folds = [
            triangle.selffolded
            for triangle in t.triangles
            if type(triangle) is SelfFoldedTriangle and triangle.selffolded.radius == gamma.id
        ]
        # Lower bounds admit the punctured digons stripping can leave
        if folds:
            loop = t.arc_map()[folds[0].loop]
            holder = loop.ends[0].puncture
            p, q = puncture_degree(t, holder), puncture_degree(t, holder.other())
            if q != 1 or p < 4:
                raise TriangulationError(f"Case III degrees out of range: p={p}, q={q}")
            result = Classification(case=CaseTag.III, p=p, q=q, loop_puncture=holder)
        else:
            if p < 2 or q < 2:
                raise TriangulationError(f"Case II degrees out of range: p={p}, q={q}")
            if min(p, q) < 3:
                logger.info(f"Case II with a punctured digon: p={p}, q={q}")
            result = Classification(case=CaseTag.II, p=p, q=q)

    logger.info(f"Classified as case {result.case.value} with p={result.p}, q={result.q}")
    return result


def boundary_quiddity(t: DiskTriangulation) -> Quiddity:
    ends = Counter()
    loops = Counter()
    for arc in t.arcs:
        for end in arc.ends:
            if type(end) is BoundaryEnd:
                ends[end.boundary] += 1
        if arc.is_loop and type(arc.ends[0]) is BoundaryEnd:
            loops[arc.ends[0].boundary] += 1

    for vertex, count in loops.items():
        if count > 2:
            logger.warning(f"Boundary vertex {vertex} carries {count} loops")

    return Quiddity(entries=tuple(ends[vertex] + 1 for vertex in range(1, t.b + 1)))


def pq_string(
    t: DiskTriangulation, classification: Classification | None = None
) -> FenceWord | None:
    """String of the arc joining the punctures, read along the triangle strip it crosses."""
    classification = classification or classify(t)
    if classification.case is not CaseTag.I:
        return None

    gluing = Gluing(t)
    crossed = [arc for arc in t.arcs if arc.is_boundary_arc]

    strip = nx.MultiGraph()
    strip.add_nodes_from(range(len(t.triangles)))
    for arc in crossed:
        (first, _), (second, _) = gluing.arc_slots[arc.id]
        strip.add_edge(first, second, key=arc.id)

    def at(node: int, name: Puncture) -> bool:
        return gluing.touches(node, name)

    components = [
        component
        for component in nx.connected_components(strip)
        if any(at(node, Puncture.P) for node in component)
        and any(at(node, Puncture.Q) for node in component)
    ]
    if len(components) != 1:
        raise TriangulationError(f"Expected one strip from P to Q, found {len(components)}")

    path = strip.subgraph(components[0])
    is_path = (
        path.number_of_edges() == path.number_of_nodes() - 1 == len(crossed)
        and max(degree for _, degree in path.degree()) <= 2
    )
    ends = [node for node, degree in path.degree() if degree == 1]
    starts = [node for node in ends if at(node, Puncture.P) and not at(node, Puncture.Q)]
    finishes = [node for node in ends if at(node, Puncture.Q) and not at(node, Puncture.P)]
    if not is_path or len(starts) != 1 or len(finishes) != 1:
        raise TriangulationError("Crossed arcs do not form a simple strip from P to Q")

    order = nx.shortest_path(path, starts[0], finishes[0])

    def crossing(u: int, v: int) -> str:
        (key,) = path.get_edge_data(u, v)
        return key

    letters = []
    for before, current, after in zip(order, order[1:], order[2:]):
        sides = t.triangles[current].sides
        ids = [side.arc if type(side) is ArcSide else None for side in sides]
        entry = ids.index(crossing(before, current))
        exit_ = ids.index(crossing(current, after))
        letters.append(Letter.DOWN if exit_ == (entry + 1) % 3 else Letter.UP)

    word = FenceWord(letters=tuple(letters))
    logger.debug(f"Strip of {len(order)} triangles reads '{word}'")
    return word


def a_value(t: DiskTriangulation, classification: Classification | None = None) -> int:
    classification = classification or classify(t)
    if classification.case is not CaseTag.I:
        return 1
    return ideal_count(pq_string(t, classification))


def band_word(t: DiskTriangulation, classification: Classification | None = None) -> CyclicWord:
    classification = classification or classify(t)
    p, q = classification.p, classification.q

    match classification.case:
        case CaseTag.I:
            word = pq_string(t, classification)
            beta = (
                FenceWord.run(Letter.UP, p - 1)
                .link(word)
                .link(FenceWord.run(Letter.UP, q - 1))
                .link(invert(word))
            )
        case CaseTag.II:
            if p < 2 or q < 2:
                raise TriangulationError(f"Case II band needs p, q >= 2, got {p}, {q}")
            beta = FenceWord.run(Letter.UP, p - 2).link(FenceWord.run(Letter.UP, q - 2))
        case CaseTag.III:
            if p < 4 or q != 1:
                raise TriangulationError(f"Case III band needs p >= 4 and q = 1, got {p}, {q}")
            beta = FenceWord.run(Letter.UP, p - 4)

    return CyclicWord(word=beta)


def quasi_simple_digraph(t: DiskTriangulation, vertex: int) -> Digraph | None:
    """Quiver of the module of the arc cutting off boundary vertex `vertex`.

    The arc ends at `vertex` are crossed in angular order and form an
    equioriented path; a loop with its radius becomes a parallel pair.
    """
    if not 1 <= vertex <= t.b:
        raise ValueError(f"Vertex {vertex} is not on the boundary")

    gluing = Gluing(t)
    met = gluing.arc_ends_around(vertex)
    if not met:
        return None

    radius_of = {
        triangle.selffolded.loop: triangle.selffolded.radius
        for triangle in t.triangles
        if type(triangle) is SelfFoldedTriangle
    }

    positions: list[tuple[str, ...]] = []
    k = 0
    while k < len(met):
        arc_id = met[k]
        if gluing.arcs[arc_id].is_loop:
            if met[k : k + 3] != [arc_id, radius_of.get(arc_id), arc_id]:
                raise TriangulationError(
                    f"Loop {arc_id} at vertex {vertex} does not enclose a radius"
                )
            positions.append((arc_id, radius_of[arc_id]))
            k += 3
        else:
            positions.append((arc_id,))
            k += 1

    index = {}
    for position in positions:
        for arc_id in position:
            index[arc_id] = len(index)

    arrows = tuple(
        (index[source], index[target])
        for earlier, later in zip(positions, positions[1:])
        for source in later
        for target in earlier
    )
    return Digraph(vertex_count=len(index), arrows=arrows)
