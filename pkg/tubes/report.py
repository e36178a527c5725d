import logging

from pydantic import BaseModel, ConfigDict

from core.config import DEFAULT_LIMITS, Limits
from core.enums import CaseTag, Puncture
from core.errors import FriezeError
from core.fence import band_count
from core.frieze import Quiddity, growth
from surface.analysis import a_value, band_word, boundary_quiddity, classify, strip_peripheral
from surface.triangulation import DiskTriangulation, ensure_valid

logger = logging.getLogger(__name__)


class TubeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    case: CaseTag | None = None
    loop_puncture: Puncture | None = None
    boundary_points: int | None = None
    p: int | None = None
    q: int | None = None
    a: int | None = None
    band: str | None = None
    quid1: tuple[int, ...] | None = None
    quid2: tuple[int, ...] | None = None
    quid3: tuple[int, ...] | None = None
    growth_formula: int | None = None
    growth_band: int | None = None
    growth_empirical1: int | None = None
    growth_empirical2: int | None = None
    growth_empirical3: int | None = None
    homogeneous_growth: int | None = None
    degenerate: bool = False
    all_equal: bool = False
    failed_stage: str | None = None
    error: str | None = None

    def growths(self) -> tuple[int | None, ...]:
        return (
            self.growth_formula,
            self.growth_band,
            self.growth_empirical1,
            self.growth_empirical2,
            self.growth_empirical3,
            self.homogeneous_growth,
        )


def small_tube_quiddities(a: int, p: int, q: int) -> tuple[Quiddity, Quiddity]:
    if min(a, p, q) < 1:
        raise ValueError("a, p and q must be positive")
    return Quiddity(entries=(a, a * p * q)), Quiddity(entries=(a * p, a * q))


def growth_formula(a: int, p: int, q: int) -> int:
    if min(a, p, q) < 1:
        raise ValueError("a, p and q must be positive")
    return a * a * p * q - 2


def _tube_growth(entries: tuple[int, ...], limits: Limits) -> int | None:
    """Growth of a tube frieze, or None when the quiddity gives no infinite frieze."""
    if min(entries) < 1:
        return None
    try:
        return growth(Quiddity(entries=entries), limits).s
    except FriezeError as error:
        logger.warning(f"Degenerate tube frieze {entries}: {error}")
        return None


def tube_report(t: DiskTriangulation, limits: Limits = DEFAULT_LIMITS) -> TubeReport:
    fields: dict = {}
    stage = "validate"

    try:
        ensure_valid(t)
        fields["boundary_points"] = t.b

        stage = "strip"
        stripped = strip_peripheral(t)

        stage = "classify"
        classification = classify(stripped)
        p, q = classification.p, classification.q
        fields.update(
            case=classification.case,
            loop_puncture=classification.loop_puncture,
            p=p,
            q=q,
        )

        stage = "a_value"
        a = a_value(stripped, classification)
        fields["a"] = a
        fields["growth_formula"] = growth_formula(a, p, q)

        stage = "band"
        band = band_word(stripped, classification)
        fields["band"] = str(band.word)
        fields["growth_band"] = band_count(band)

        stage = "boundary_frieze"
        quid1 = boundary_quiddity(t)
        fields["quid1"] = quid1.entries
        fields["growth_empirical1"] = growth(quid1, limits).s

        stage = "small_tubes"
        quid2, quid3 = small_tube_quiddities(a, p, q)
        fields.update(quid2=quid2.entries, quid3=quid3.entries)
        fields["growth_empirical2"] = _tube_growth(quid2.entries, limits)
        fields["growth_empirical3"] = _tube_growth(quid3.entries, limits)

        stage = "homogeneous"
        fields["homogeneous_growth"] = _tube_growth((fields["growth_formula"],), limits)

    except (ValueError, RuntimeError) as error:
        logger.error(f"Tube report failed at {stage}: {error}")
        return TubeReport(**fields, failed_stage=stage, error=str(error))

    report = TubeReport(**fields)
    degenerate = None in report.growths()
    all_equal = not degenerate and len(set(report.growths())) == 1
    return report.model_copy(update={"degenerate": degenerate, "all_equal": all_equal})
