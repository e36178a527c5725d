from enum import Enum


class Letter(Enum):
    DOWN = "D"
    UP = "U"

    def flipped(self) -> "Letter":
        return Letter.UP if self is Letter.DOWN else Letter.DOWN


class MatrixForm(Enum):
    SPECIALIZED = "nabla"
    DUAL = "delta"


class FriezeStatus(Enum):
    INFINITE_SO_FAR = "infinite_so_far"
    CLOSED = "closed"
    INVALID = "invalid"


class Puncture(Enum):
    P = "P"
    Q = "Q"

    def other(self) -> "Puncture":
        return Puncture.Q if self is Puncture.P else Puncture.P


class CaseTag(Enum):
    I = "I"
    II = "II"
    III = "III"


class TaggedPQArc(Enum):
    PLAIN = "plain"
    NOTCHED_P = "notched_p"
    NOTCHED_Q = "notched_q"
    NOTCHED_PQ = "notched_pq"


class MeshDirection(Enum):
    LENGTHEN = "lengthen"
    SHORTEN = "shorten"


class OutputFormat(Enum):
    TEXT = "text"
    MACHINE = "machine"
