from pydantic import BaseModel, ConfigDict, Field


class Limits(BaseModel):
    model_config = ConfigDict(frozen=True)

    brute_force_vertex_cap: int = Field(default=24, ge=1)
    frieze_row_cap: int = Field(default=64, ge=1)
    entry_bit_cap: int = Field(default=4096, ge=1)


DEFAULT_LIMITS = Limits()
