from typing import Any


class SizeLimitError(ValueError):
    pass


class FriezeError(ValueError):
    def __init__(self, message: str, frieze: Any = None) -> None:
        super().__init__(message)
        self.frieze = frieze


class TriangulationError(ValueError):
    def __init__(self, message: str, violations: list | None = None) -> None:
        super().__init__(message)
        self.violations = violations or []


class InvalidPolygonTriangulation(ValueError):
    pass


class GeneratorError(ValueError):
    pass
