import json

import pytest

from conftest import FIXTURES, load_fixture
from core.config import DEFAULT_LIMITS
from core.enums import CaseTag
from core.errors import FriezeError
from core.frieze import Quiddity, growth
from surface.generator import GeneratorParams, random_triangulation
from surface.triangulation import DiskTriangulation, add_ear
from tubes.report import (
    TubeReport,
    _tube_growth,
    growth_formula,
    small_tube_quiddities,
    tube_report,
)
from tubes.verify import VerificationRunner


@pytest.mark.parametrize(
    "name, case, p, q, a, quids, s",
    [
        ("case_ii", CaseTag.II, 3, 3, 1, ((3, 3), (1, 9), (3, 3)), 7),
        ("case_iii", CaseTag.III, 6, 1, 1, ((3, 2), (1, 6), (6, 1)), 4),
        ("triangul_quidd", CaseTag.I, 1, 4, 3, ((7, 1, 4, 2, 2), (3, 12), (3, 12)), 34),
        ("case_i_single", CaseTag.I, 2, 2, 2, ((4, 4), (2, 8), (4, 4)), 14),
        ("case_i_turn", CaseTag.I, 2, 2, 5, ((4, 3, 4, 3), (5, 20), (10, 10)), 98),
    ],
)
def test_fixture_reports(name, case, p, q, a, quids, s):
    report = tube_report(load_fixture(name))

    assert report.failed_stage is None
    assert (report.case, report.p, report.q, report.a) == (case, p, q, a)
    assert (report.quid1, report.quid2, report.quid3) == quids
    assert report.growths() == (s,) * 6
    assert report.all_equal
    assert not report.degenerate


def test_report_keeps_the_unstripped_boundary():
    t = load_fixture("triangul_quidd")
    report = tube_report(t)

    assert report.boundary_points == 5
    assert report.band == "DUDUUUDD"


def test_report_ignores_peripheral_ears():
    t = load_fixture("case_ii")
    grown = add_ear(add_ear(t, after=1, arc_id="h1"), after=2, arc_id="h2")
    report = tube_report(grown)

    assert report.boundary_points == 4
    assert report.all_equal
    assert report.growth_empirical1 == 7


@pytest.mark.parametrize(
    "a, p, q, expected",
    [
        (3, 1, 4, ((3, 12), (3, 12))),
        (1, 3, 3, ((1, 9), (3, 3))),
        (1, 1, 1, ((1, 1), (1, 1))),
    ],
)
def test_small_tube_quiddities(a, p, q, expected):
    outer, inner = small_tube_quiddities(a, p, q)

    assert (outer.entries, inner.entries) == expected


@pytest.mark.parametrize("a, p, q, expected", [(3, 1, 4, 34), (1, 3, 3, 7), (1, 6, 1, 4)])
def test_growth_formula(a, p, q, expected):
    assert growth_formula(a, p, q) == expected


def test_formula_inputs_must_be_positive():
    with pytest.raises(ValueError):
        growth_formula(0, 1, 1)
    with pytest.raises(ValueError):
        small_tube_quiddities(1, -1, 1)


def test_small_tubes_match_the_formula():
    for a in range(1, 6):
        for p in range(1, 6):
            for q in range(1, 6):
                if a * a * p * q < 3:
                    continue
                outer, inner = small_tube_quiddities(a, p, q)
                s = growth_formula(a, p, q)

                assert growth(outer).s == s
                assert growth(inner).s == s
                if s >= 2:
                    assert growth(Quiddity(entries=(s,))).s == s


def test_smallest_tube_is_degenerate():
    outer, _ = small_tube_quiddities(1, 1, 1)

    with pytest.raises(FriezeError):
        growth(outer)
    assert _tube_growth(outer.entries, DEFAULT_LIMITS) is None
    assert _tube_growth((0, 3), DEFAULT_LIMITS) is None
    assert _tube_growth((4,), DEFAULT_LIMITS) == 4


def test_invalid_triangulation_fails_validation():
    data = json.loads((FIXTURES / "case_ii.json").read_text())
    data["arcs"] = data["arcs"][:-1]
    report = tube_report(DiskTriangulation.model_validate(data))

    assert report.failed_stage == "validate"
    assert report.error
    assert report.case is None
    assert not report.all_equal


def test_generated_reports_agree():
    for seed in range(20):
        params = GeneratorParams(b=5, p=2, q=3, ears=seed % 3)
        report = tube_report(random_triangulation(seed, params))

        assert report.all_equal, report.growths()
        assert report.growth_formula == report.a**2 * 6 - 2


def test_verification_run():
    result = VerificationRunner(42).run(100)

    assert len(result.instances) == 100
    assert result.ok
    assert result.failures == []


def test_verification_is_reproducible():
    first = VerificationRunner(7, b_max=5).run(10)
    second = VerificationRunner(7, b_max=5).run(10)

    assert first == second
    for instance in first.instances:
        assert instance.params.b <= 5
        assert instance.params.case is CaseTag.I


def test_verification_rejects_bad_bounds():
    with pytest.raises(ValueError):
        VerificationRunner(0, b_max=1)
    with pytest.raises(ValueError):
        VerificationRunner(0).run(-1)


def test_machine_report_round_trip():
    report = tube_report(load_fixture("case_i_turn"))

    assert TubeReport.model_validate_json(report.model_dump_json()) == report
