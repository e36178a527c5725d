import logging
from itertools import combinations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.config import DEFAULT_LIMITS, Limits
from core.enums import FriezeStatus, Letter
from core.errors import FriezeError, InvalidPolygonTriangulation, SizeLimitError
from core.fence import CyclicWord, FenceWord

logger = logging.getLogger(__name__)


class Quiddity(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[int, ...] = Field(min_length=1)

    @field_validator("entries")
    @classmethod
    def check_positive(cls, entries: tuple[int, ...]) -> tuple[int, ...]:
        if any(entry < 1 for entry in entries):
            raise ValueError("Quiddity entries must be positive integers")
        return entries

    @classmethod
    def parse(cls, text: str) -> "Quiddity":
        try:
            entries = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"Quiddity must be comma-separated integers: {text!r}")
        return cls(entries=entries)

    @property
    def period(self) -> int:
        return len(self.entries)

    def rotated(self, shift: int) -> "Quiddity":
        shift %= self.period
        return Quiddity(entries=self.entries[shift:] + self.entries[:shift])

    def repeated(self, times: int) -> "Quiddity":
        if times < 1:
            raise ValueError("A quiddity must be repeated at least once")
        return Quiddity(entries=self.entries * times)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


class Frieze(BaseModel):
    """Rows -1..R of the frieze generated by a quiddity.

    `rows[0]` is the row of 0s, `rows[1]` the row of 1s and `rows[2]` the
    quiddity itself. Entry i of row r+1 sits between entries i and i+1 of row r.
    """

    model_config = ConfigDict(frozen=True)

    quiddity: Quiddity
    rows: tuple[tuple[int, ...], ...]
    status: FriezeStatus
    status_row: int | None = None
    status_index: int | None = None

    @property
    def period(self) -> int:
        return self.quiddity.period

    @property
    def last_row(self) -> int:
        return len(self.rows) - 2

    def row(self, r: int) -> tuple[int, ...]:
        if not -1 <= r <= self.last_row:
            raise IndexError(f"Row {r} was not generated")
        return self.rows[r + 1]

    def describe_status(self) -> str:
        match self.status:
            case FriezeStatus.CLOSED:
                return f"closed at row {self.status_row}"
            case FriezeStatus.INVALID:
                return f"invalid at row {self.status_row}, index {self.status_index}"
            case _:
                return f"infinite through row {self.last_row}"


class GrowthValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: int

    def s_k(self, k: int) -> int:
        return chebyshev_growth(self.s, k)


def _build(
    quiddity: Quiddity,
    stored: list[np.ndarray],
    status: FriezeStatus,
    status_row: int | None = None,
    status_index: int | None = None,
) -> Frieze:
    return Frieze(
        quiddity=quiddity,
        rows=tuple(tuple(int(entry) for entry in row) for row in stored),
        status=status,
        status_row=status_row,
        status_index=status_index,
    )


def generate(q: Quiddity, rows: int, limits: Limits = DEFAULT_LIMITS) -> Frieze:
    if rows < 1:
        raise ValueError("At least one row must be generated")
    if rows > limits.frieze_row_cap:
        raise SizeLimitError(
            f"{rows} rows exceeds the frieze row cap of {limits.frieze_row_cap}"
        )

    m = q.period
    stored = [
        np.zeros(m, dtype=object),
        np.ones(m, dtype=object),
        np.array(q.entries, dtype=object),
    ]
    r = 1

    while True:
        previous, current = stored[-2], stored[-1]
        closing = bool(np.all(current == 1))
        if r >= rows and not closing:
            return _build(q, stored, FriezeStatus.INFINITE_SO_FAR)

        numerator = current * np.roll(current, -1) - 1
        divisor = np.roll(previous, -1)

        inexact = np.flatnonzero(numerator % divisor != 0)
        if inexact.size:
            logger.debug(f"{q}: inexact division at row {r + 1}")
            return _build(q, stored, FriezeStatus.INVALID, r + 1, int(inexact[0]))

        following = numerator // divisor

        if closing and bool(np.all(following == 0)):
            stored.append(following)
            logger.debug(f"{q}: closes at row {r}")
            return _build(q, stored, FriezeStatus.CLOSED, r)

        # Row R is all 1s but the frieze goes on; the lookahead is not kept
        if r >= rows:
            return _build(q, stored, FriezeStatus.INFINITE_SO_FAR)

        non_positive = np.flatnonzero(following <= 0)
        if non_positive.size:
            logger.debug(f"{q}: non-positive entry at row {r + 1}")
            return _build(q, stored, FriezeStatus.INVALID, r + 1, int(non_positive[0]))

        if max(int(entry).bit_length() for entry in following) > limits.entry_bit_cap:
            raise SizeLimitError(
                f"Row {r + 1} of {q} exceeds {limits.entry_bit_cap} bits"
            )

        stored.append(following)
        r += 1


def _row_difference(frieze: Frieze, top: int) -> int:
    m = frieze.period
    upper, lower = frieze.row(top), frieze.row(top - 2)
    differences = {upper[i] - lower[(i + 1) % m] for i in range(m)}
    if len(differences) != 1:
        raise RuntimeError(
            f"Rows {top} and {top - 2} of {frieze.quiddity} differ unevenly: {differences}"
        )
    return differences.pop()


def growth(q: Quiddity, limits: Limits = DEFAULT_LIMITS) -> GrowthValue:
    return GrowthValue(s=growth_at(q, 1, limits))


def growth_at(q: Quiddity, k: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """Measured difference between rows km and km-2 of the frieze of `q`."""
    if k < 1:
        raise ValueError("k must be at least 1")

    depth = k * q.period
    frieze = generate(q, depth, limits)
    if frieze.status is not FriezeStatus.INFINITE_SO_FAR or frieze.last_row < depth:
        raise FriezeError(
            f"Row {depth} of {q} is unreachable: {frieze.describe_status()}", frieze
        )
    return _row_difference(frieze, depth)


def chebyshev_growth(s1: int, k: int) -> int:
    if k < 0:
        raise ValueError("k cannot be negative")

    previous, current = 2, s1
    if k == 0:
        return previous
    for _ in range(k - 1):
        previous, current = current, s1 * current - previous
    return current


def minimal_period(q: Quiddity) -> int:
    m = q.period
    for d in range(1, m + 1):
        if m % d == 0 and q.entries == q.entries[:d] * (m // d):
            return d
    return m


def _crosses(first: tuple[int, int], second: tuple[int, int]) -> bool:
    a, b = first
    c, d = second
    return a < c < b < d or c < a < d < b


def polygon_quiddity(n: int, diagonals: list[tuple[int, int]]) -> Quiddity:
    if n < 3:
        raise InvalidPolygonTriangulation("A polygon needs at least 3 vertices")
    if len(diagonals) != n - 3:
        raise InvalidPolygonTriangulation(
            f"An {n}-gon needs {n - 3} diagonals, got {len(diagonals)}"
        )

    normalized = []
    for i, j in diagonals:
        i, j = min(i, j), max(i, j)
        if i < 1 or j > n:
            raise InvalidPolygonTriangulation(f"Diagonal ({i},{j}) leaves the polygon")
        if j - i in (0, 1, n - 1):
            raise InvalidPolygonTriangulation(f"({i},{j}) is not a diagonal")
        normalized.append((i, j))

    if len(set(normalized)) != len(normalized):
        raise InvalidPolygonTriangulation("Repeated diagonal")

    for first, second in combinations(normalized, 2):
        if _crosses(first, second):
            raise InvalidPolygonTriangulation(f"Diagonals {first} and {second} cross")

    # Triangles at a vertex = diagonals at it + 1
    degree = [0] * (n + 1)
    for i, j in normalized:
        degree[i] += 1
        degree[j] += 1
    return Quiddity(entries=tuple(degree[v] + 1 for v in range(1, n + 1)))


ANNULUS_LETTERS = {"O": Letter.UP, "I": Letter.DOWN}


def check_annulus_word(word: str) -> None:
    if set(word) - set(ANNULUS_LETTERS):
        raise ValueError(f"Annulus word may only contain O and I, got {word!r}")
    if "O" not in word or "I" not in word:
        raise ValueError("Both boundary components need a marked point")


def annulus_quiddities(word: str) -> tuple[Quiddity, Quiddity]:
    """Quiddities of the outer and inner boundary of a bridging annulus triangulation.

    Each letter is a triangle in cyclic order: O has a segment on the outer
    boundary, I on the inner one.
    """
    check_annulus_word(word)

    def entries(own: str) -> tuple[int, ...]:
        positions = [k for k, letter in enumerate(word) if letter == own]
        gaps = [
            (positions[(t + 1) % len(positions)] - positions[t] - 1) % len(word)
            for t in range(len(positions))
        ]
        return tuple(gap + 2 for gap in gaps)

    return Quiddity(entries=entries("O")), Quiddity(entries=entries("I"))


def annulus_band(word: str) -> CyclicWord:
    check_annulus_word(word)

    # Rotate so the closing letter is the last I
    cut = word.rindex("I")
    rotated = word[cut + 1 :] + word[:cut]
    return CyclicWord(word=FenceWord(letters=tuple(ANNULUS_LETTERS[c] for c in rotated)))
