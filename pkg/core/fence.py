import logging
from collections import defaultdict
from functools import reduce
from itertools import groupby

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.config import DEFAULT_LIMITS, Limits
from core.enums import Letter, MatrixForm
from core.errors import SizeLimitError

logger = logging.getLogger(__name__)

# Right factors of the transfer product; the one-vertex word starts at M_DOWN
M_DOWN = ((2, -1), (1, 0))
M_UP = ((1, 0), (-1, 1))

NABLA_TO_DELTA = ((0, 1), (-1, 1))
DELTA_TO_NABLA = ((1, -1), (1, 0))

# Bitmasks in the oracle are int64
MASK_BITS = 62


def _as_array(entries) -> np.ndarray:
    return np.array(entries, dtype=object)


class RankMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, int], tuple[int, int]]
    form: MatrixForm = MatrixForm.SPECIALIZED

    @classmethod
    def from_array(
        cls, array: np.ndarray, form: MatrixForm = MatrixForm.SPECIALIZED
    ) -> "RankMatrix":
        rows = array.tolist()
        return cls(
            entries=(
                (int(rows[0][0]), int(rows[0][1])),
                (int(rows[1][0]), int(rows[1][1])),
            ),
            form=form,
        )

    def to_array(self) -> np.ndarray:
        return _as_array(self.entries)

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    @property
    def trace(self) -> int:
        return int(np.trace(self.to_array()))

    def __matmul__(self, other: "RankMatrix") -> "RankMatrix":
        return RankMatrix.from_array(self.to_array() @ other.to_array(), self.form)

    def __str__(self) -> str:
        (a, b), (c, d) = self.entries
        return f"[[{a},{b}],[{c},{d}]]"


class Digraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex_count: int = Field(ge=0)
    arrows: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def check_arrows(self) -> "Digraph":
        if len(set(self.arrows)) != len(self.arrows):
            raise ValueError("Digraph has duplicate arrows")

        for source, target in self.arrows:
            if not (0 <= source < self.vertex_count and 0 <= target < self.vertex_count):
                raise ValueError(f"Arrow {source}->{target} leaves the vertex range")

        return self


class FenceWord(BaseModel):
    """Left-to-right arrow directions of a type A quiver.

    Letter k sits between vertices k and k+1: DOWN is k -> k+1, UP is k+1 -> k.
    The empty word is the one-vertex quiver.
    """

    model_config = ConfigDict(frozen=True)

    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "FenceWord":
        invalid = set(text) - {letter.value for letter in Letter}
        if invalid:
            raise ValueError(
                f"Word may only contain U and D, got {''.join(sorted(invalid))!r}"
            )
        return cls(letters=tuple(Letter(char) for char in text))

    @classmethod
    def run(cls, letter: Letter, length: int) -> "FenceWord":
        if length < 0:
            raise ValueError("Run length cannot be negative")
        return cls(letters=(letter,) * length)

    @property
    def vertex_count(self) -> int:
        return len(self.letters) + 1

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter.value for letter in self.letters)

    def __add__(self, other: "FenceWord") -> "FenceWord":
        return FenceWord(letters=self.letters + other.letters)

    def link(self, other: "FenceWord", letter: Letter = Letter.DOWN) -> "FenceWord":
        return FenceWord(letters=self.letters + (letter,) + other.letters)

    def flipped(self) -> "FenceWord":
        return FenceWord(letters=tuple(letter.flipped() for letter in self.letters))

    def digraph(self) -> Digraph:
        return Digraph(vertex_count=self.vertex_count, arrows=tuple(self._arrows()))

    def _arrows(self):
        for k, letter in enumerate(self.letters):
            yield (k, k + 1) if letter is Letter.DOWN else (k + 1, k)


class CyclicWord(BaseModel):
    """A word closed up by one more DOWN arrow from its last vertex to its first."""

    model_config = ConfigDict(frozen=True)

    word: FenceWord = FenceWord()

    @classmethod
    def parse(cls, text: str) -> "CyclicWord":
        return cls(word=FenceWord.parse(text))

    @property
    def vertex_count(self) -> int:
        return self.word.vertex_count

    @property
    def is_degenerate(self) -> bool:
        # Every arrow points the same way round: an oriented cycle
        return all(letter is Letter.DOWN for letter in self.word.letters)

    def digraph(self) -> Digraph:
        closing = (len(self.word), 0)
        # A one-letter "U" already has the closing arrow; keep one copy
        arrows = dict.fromkeys((*self.word._arrows(), closing))
        return Digraph(vertex_count=self.vertex_count, arrows=tuple(arrows))

    def __str__(self) -> str:
        return f"↻{self.word}"


def nabla(word: FenceWord) -> RankMatrix:
    steps = {Letter.DOWN: _as_array(M_DOWN), Letter.UP: _as_array(M_UP)}
    product = reduce(
        lambda acc, letter: acc @ steps[letter], word.letters, _as_array(M_DOWN)
    )
    return RankMatrix.from_array(product, MatrixForm.SPECIALIZED)


def delta(word: FenceWord) -> RankMatrix:
    return nabla_to_delta(nabla(word))


def nabla_to_delta(m: RankMatrix) -> RankMatrix:
    if m.form is not MatrixForm.SPECIALIZED:
        raise ValueError("Expected a specialized rank matrix")
    return RankMatrix.from_array(m.to_array() @ _as_array(NABLA_TO_DELTA), MatrixForm.DUAL)


def delta_to_nabla(m: RankMatrix) -> RankMatrix:
    if m.form is not MatrixForm.DUAL:
        raise ValueError("Expected a dual rank matrix")
    return RankMatrix.from_array(
        m.to_array() @ _as_array(DELTA_TO_NABLA), MatrixForm.SPECIALIZED
    )


def invert(word: FenceWord) -> FenceWord:
    return FenceWord(letters=tuple(letter.flipped() for letter in reversed(word.letters)))


def nabla_of_inverse(m: RankMatrix) -> RankMatrix:
    if m.form is not MatrixForm.SPECIALIZED:
        raise ValueError("Expected a specialized rank matrix")

    (a, minus_b), (c, minus_d) = m.entries
    b, d = -minus_b, -minus_d
    return RankMatrix(
        entries=((a, c - a), (a - b, c + b - a - d)), form=MatrixForm.SPECIALIZED
    )


def ideal_count(word: FenceWord) -> int:
    return nabla(word).entries[0][0]


def run_nabla(letter: Letter, length: int) -> RankMatrix:
    t = length
    if letter is Letter.UP:
        entries = ((t + 2, -1), (1, 0))
    else:
        entries = ((t + 2, -(t + 1)), (t + 1, -t))
    return RankMatrix(entries=entries, form=MatrixForm.SPECIALIZED)


def run_delta(letter: Letter, length: int) -> RankMatrix:
    t = length
    if letter is Letter.UP:
        entries = ((1, t + 1), (0, 1))
    else:
        entries = ((t + 1, 1), (t, 1))
    return RankMatrix(entries=entries, form=MatrixForm.DUAL)


def segment_vector(word: FenceWord) -> tuple[int, ...]:
    return tuple(len(list(run)) for _, run in groupby(word.letters))


def closed_subset_count(graph: Digraph, limits: Limits = DEFAULT_LIMITS) -> int:
    """Count vertex sets S with v in S and v -> w implying w in S.

    Exhaustive: vertices are added one at a time and every arrow is checked
    as soon as both of its ends have been decided.
    """
    n = graph.vertex_count
    if n > min(limits.brute_force_vertex_cap, MASK_BITS):
        raise SizeLimitError(
            f"{n} vertices exceeds the brute-force cap of {limits.brute_force_vertex_cap}"
        )

    decided_at: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for source, target in graph.arrows:
        decided_at[max(source, target)].append((source, target))

    masks = np.zeros(1, dtype=np.int64)
    for vertex in range(n):
        masks = np.concatenate([masks, masks | np.int64(1 << vertex)])
        for source, target in decided_at[vertex]:
            has_source = (masks >> source) & 1
            has_target = (masks >> target) & 1
            masks = masks[(has_source == 0) | (has_target == 1)]

    logger.debug(f"Closed subsets of {n}-vertex digraph: {masks.size}")
    return int(masks.size)


def band_count(cyclic: CyclicWord) -> int:
    if cyclic.is_degenerate:
        logger.warning(f"Band {cyclic} is an oriented cycle")
    return nabla(cyclic.word).trace
