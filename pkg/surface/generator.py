import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.enums import CaseTag, Puncture
from core.errors import GeneratorError
from surface.triangulation import (
    Arc,
    ArcSide,
    DiskTriangulation,
    PlainTriangle,
    SelfFold,
    SelfFoldedTriangle,
    Triangle,
    add_ear,
    boundary,
    ensure_valid,
    puncture,
    rotate_labels,
    segment,
    swap_punctures,
)

Token = tuple[str, int]


class GeneratorParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: int = Field(ge=2)
    p: int = Field(ge=1)
    q: int = Field(ge=1)
    case: CaseTag = CaseTag.I
    ears: int = Field(default=0, ge=0)


class _Builder:
    """Collects arcs and triangles over symbolic boundary tokens."""

    def __init__(self, order: list[Token]) -> None:
        self.label = {token: index + 1 for index, token in enumerate(order)}
        self.boundary_points = len(order)
        self.arcs: list[Arc] = []
        self.triangles: list[Triangle] = []

    def arc(self, arc_id: str, first, second) -> ArcSide:
        self.arcs.append(Arc(id=arc_id, ends=(self._end(first), self._end(second))))
        return ArcSide(arc=arc_id)

    def _end(self, item):
        return puncture(item) if type(item) is Puncture else boundary(self.label[item])

    def segment(self, start: Token):
        return segment(self.label[start], self.boundary_points)

    def plain(self, *sides) -> None:
        self.triangles.append(PlainTriangle(sides=sides))

    def folded(self, loop: ArcSide, radius: ArcSide) -> None:
        self.triangles.append(
            SelfFoldedTriangle(selffolded=SelfFold(loop=loop.arc, radius=radius.arc))
        )

    def fan(self, prefix: str, centre: Puncture, rim: list[Token]) -> list[ArcSide]:
        """Arcs from `centre` to each rim token and the triangles between neighbours."""
        spokes = [self.arc(f"{prefix}{k + 1}", token, centre) for k, token in enumerate(rim)]
        for k in range(len(rim) - 1):
            self.plain(self.segment(rim[k]), spokes[k + 1], spokes[k])
        return spokes

    def build(self) -> DiskTriangulation:
        return DiskTriangulation(
            boundary_points=self.boundary_points,
            arcs=tuple(self.arcs),
            triangles=tuple(self.triangles),
        )


class TriangulationGenerator:
    def __init__(self, seed: int) -> None:
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.logger = logging.getLogger(__name__)

    def generate(self, params: GeneratorParams) -> DiskTriangulation:
        match params.case:
            case CaseTag.I:
                t = self._case_i(params)
            case CaseTag.II:
                t = self._case_ii(params)
            case CaseTag.III:
                t = self._case_iii(params)

        t = rotate_labels(t, int(self.rng.integers(t.b)))
        for k in range(params.ears):
            t = add_ear(t, after=int(self.rng.integers(1, t.b + 1)), arc_id=f"h{k + 1}")

        self.logger.debug(
            f"Seed {self.seed}: case {params.case.value}, b={params.b}, "
            f"p={params.p}, q={params.q}, {params.ears} ears"
        )
        return ensure_valid(t)

    def _zigzag(self, steps: int, both: bool) -> list[str]:
        moves = list(self.rng.choice(["B", "T"], size=steps))
        if both and not {"B", "T"} <= set(moves):
            missing = "T" if "B" in moves else "B"
            moves[int(self.rng.integers(steps))] = missing
        return [str(move) for move in moves]

    def _case_i(self, params: GeneratorParams) -> DiskTriangulation:
        b, p, q = params.b, params.p, params.q
        m = b + 3 - p - q
        if m < 1:
            raise GeneratorError(f"No crossing arcs fit: b={b}, p={p}, q={q}")

        # Both chains must advance when each puncture sits in a self-folded triangle
        moves = self._zigzag(m - 1, both=p == 1 and q == 1)
        nb, nt = moves.count("B"), moves.count("T")

        bottom = [("B", k) for k in range(nb + 1)]
        top = [("T", k) for k in range(nt + 1)]
        alias: dict[Token, Token] = {}
        if p == 1:
            alias[top[0]] = bottom[0]
        if q == 1:
            alias[top[-1]] = bottom[-1]

        order = (
            bottom
            + [("Y", k) for k in range(q - 2)]
            + top[::-1]
            + [("X", k) for k in range(p - 2)]
        )
        builder = _Builder([token for token in order if token not in alias])
        if builder.boundary_points != b:
            raise GeneratorError(f"Strip has {builder.boundary_points} boundary points, wanted {b}")

        def resolve(token: Token) -> Token:
            return alias.get(token, token)

        rungs = [(bottom[0], top[0])]
        for move in moves:
            low, high = rungs[-1]
            if move == "B":
                rungs.append((("B", low[1] + 1), high))
            else:
                rungs.append((low, ("T", high[1] + 1)))

        crossing = [
            builder.arc(f"c{j + 1}", resolve(low), resolve(high))
            for j, (low, high) in enumerate(rungs)
        ]
        for j, move in enumerate(moves):
            if move == "B":
                builder.plain(builder.segment(resolve(rungs[j][0])), crossing[j + 1], crossing[j])
            else:
                top_side = builder.segment(resolve(rungs[j + 1][1]))
                builder.plain(crossing[j + 1], top_side, crossing[j])

        if p == 1:
            radius = builder.arc("d1", bottom[0], Puncture.P)
            builder.folded(crossing[0], radius)
        else:
            rim = [resolve(top[0]), *(("X", k) for k in range(p - 2)), bottom[0]]
            spokes = builder.fan("d", Puncture.P, rim)
            builder.plain(crossing[0], spokes[0], spokes[-1])

        if q == 1:
            radius = builder.arc("e1", bottom[-1], Puncture.Q)
            builder.folded(crossing[-1], radius)
        else:
            rim = [bottom[-1], *(("Y", k) for k in range(q - 2)), resolve(top[-1])]
            spokes = builder.fan("e", Puncture.Q, rim)
            builder.plain(crossing[-1], spokes[0], spokes[-1])

        return builder.build()

    def _case_ii(self, params: GeneratorParams) -> DiskTriangulation:
        b, p, q = params.b, params.p, params.q
        if p < 3 or q < 3 or b != p + q - 4:
            raise GeneratorError(f"Case II needs p, q >= 3 and b = p + q - 4: b={b}, p={p}, q={q}")

        upper, lower = ("U", 0), ("V", 0)
        left = [("X", k) for k in range(p - 3)]
        right = [("Y", k) for k in range(q - 3)]
        builder = _Builder([upper, *left, lower, *right])

        gamma = builder.arc("g", Puncture.P, Puncture.Q)
        d = builder.fan("d", Puncture.P, [upper, *left, lower])
        e = builder.fan("e", Puncture.Q, [lower, *right, upper])
        builder.plain(d[0], gamma, e[-1])
        builder.plain(e[0], gamma, d[-1])
        return builder.build()

    def _case_iii(self, params: GeneratorParams) -> DiskTriangulation:
        b, p, q = params.b, params.p, params.q
        if q != 1 or p != b + 4:
            raise GeneratorError(f"Case III needs q = 1 and p = b + 4: b={b}, p={p}, q={q}")

        rim = [("W", k) for k in range(b)]
        builder = _Builder(rim)

        loop = builder.arc("l", Puncture.P, Puncture.P)
        gamma = builder.arc("g", Puncture.P, Puncture.Q)
        builder.folded(loop, gamma)
        d = builder.fan("d", Puncture.P, [*rim, rim[0]])
        builder.plain(loop, d[-1], d[0])

        t = builder.build()
        if self.rng.integers(2):
            t = swap_punctures(t)
        return t


def random_triangulation(seed: int, params: GeneratorParams) -> DiskTriangulation:
    return TriangulationGenerator(seed).generate(params)


def random_polygon_diagonals(seed: int, n: int) -> list[tuple[int, int]]:
    if n < 3:
        raise GeneratorError("A polygon needs at least 3 vertices")

    rng = np.random.default_rng(seed)
    polygon = list(range(1, n + 1))
    diagonals = []
    while len(polygon) > 3:
        k = int(rng.integers(len(polygon)))
        before, after = polygon[k - 1], polygon[(k + 1) % len(polygon)]
        diagonals.append((min(before, after), max(before, after)))
        del polygon[k]
    return diagonals
