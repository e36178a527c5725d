from pydantic import BaseModel, ConfigDict, Field

from core.enums import MeshDirection, Puncture, TaggedPQArc


def _wrap(vertex: int, boundary_points: int) -> int:
    return (vertex - 1) % boundary_points + 1


class PeripheralArcCoord(BaseModel):
    """Arc from v_s following the boundary counterclockwise to v_t, winding l times.

    The boundary stretch it follows has `length` segments; valid arcs follow
    at least two.
    """

    model_config = ConfigDict(frozen=True)

    v_s: int = Field(ge=1)
    v_t: int = Field(ge=1)
    l: int = Field(default=0, ge=0)

    @classmethod
    def from_length(cls, v_s: int, length: int, boundary_points: int) -> "PeripheralArcCoord":
        if length < 2:
            raise ValueError("A peripheral arc follows at least two segments")
        v_s = _wrap(v_s, boundary_points)
        v_t = _wrap(v_s + length, boundary_points)
        winding = (length - (v_t - v_s) % boundary_points) // boundary_points
        return cls(v_s=v_s, v_t=v_t, l=winding)

    def length(self, boundary_points: int) -> int:
        return (self.v_t - self.v_s) % boundary_points + self.l * boundary_points

    def is_valid(self, boundary_points: int) -> bool:
        in_range = self.v_s <= boundary_points and self.v_t <= boundary_points
        return in_range and self.length(boundary_points) >= 2

    def __str__(self) -> str:
        return f"({self.v_s},{self.v_t},{self.l})"


class PunctureArcCoord(BaseModel):
    model_config = ConfigDict(frozen=True)

    boundary: int = Field(ge=1)
    puncture: Puncture
    notched: bool = False


def _check(c: PeripheralArcCoord, boundary_points: int) -> None:
    if not c.is_valid(boundary_points):
        raise ValueError(f"{c} is not a peripheral arc with {boundary_points} boundary points")


def tau_peripheral(c: PeripheralArcCoord, boundary_points: int) -> PeripheralArcCoord:
    _check(c, boundary_points)
    return PeripheralArcCoord(
        v_s=_wrap(c.v_s - 1, boundary_points),
        v_t=_wrap(c.v_t - 1, boundary_points),
        l=c.l,
    )


def mesh_step(
    c: PeripheralArcCoord, direction: MeshDirection, boundary_points: int
) -> PeripheralArcCoord | None:
    _check(c, boundary_points)
    length = c.length(boundary_points)

    if direction is MeshDirection.LENGTHEN:
        return PeripheralArcCoord.from_length(c.v_s, length + 1, boundary_points)

    # Shortening an arc at the mouth leaves the tube
    if length == 2:
        return None
    return PeripheralArcCoord.from_length(c.v_s + 1, length - 1, boundary_points)


def quasi_simple_coords(boundary_points: int) -> list[PeripheralArcCoord]:
    return [
        PeripheralArcCoord.from_length(v, 2, boundary_points)
        for v in range(1, boundary_points + 1)
    ]


TAU_TAGGED = {
    TaggedPQArc.PLAIN: TaggedPQArc.NOTCHED_PQ,
    TaggedPQArc.NOTCHED_PQ: TaggedPQArc.PLAIN,
    TaggedPQArc.NOTCHED_P: TaggedPQArc.NOTCHED_Q,
    TaggedPQArc.NOTCHED_Q: TaggedPQArc.NOTCHED_P,
}


def tau_tagged(x: TaggedPQArc) -> TaggedPQArc:
    return TAU_TAGGED[x]


def tau_puncture_arc(c: PunctureArcCoord, boundary_points: int) -> PunctureArcCoord:
    if c.boundary > boundary_points:
        raise ValueError(f"Vertex {c.boundary} is not on the boundary")
    return PunctureArcCoord(
        boundary=_wrap(c.boundary - 1, boundary_points),
        puncture=c.puncture,
        notched=not c.notched,
    )
