import pytest

from core.enums import CaseTag
from core.fence import FenceWord, nabla
from core.frieze import Quiddity, generate
from utils.visualization import CLOSING_MARK, Visualizer


def frieze_of(*entries: int, rows: int):
    return generate(Quiddity(entries=entries), rows)


def test_rendered_rows_parse_back():
    frieze = frieze_of(7, 1, 4, 2, 2, rows=6)
    rows = Visualizer.parse_rendered(Visualizer.render_frieze(frieze))

    assert sorted(rows) == list(range(0, 7))
    for r, row in rows.items():
        assert row == frieze.row(r)


def test_row_of_4_2_2():
    rows = Visualizer.parse_rendered(Visualizer.render_frieze(frieze_of(4, 2, 2, rows=3)))

    assert sorted(rows[2]) == [3, 7, 7]


def test_single_row_render():
    lines = Visualizer.render_frieze(frieze_of(4, 2, 2, rows=1)).splitlines()

    assert [line.split(":")[0] for line in lines] == ["Row 0", "Row 1"]


def test_zero_rows_on_request():
    frieze = frieze_of(3, 1, 2, 2, 1, rows=4)

    hidden = Visualizer.parse_rendered(Visualizer.render_frieze(frieze))
    shown = Visualizer.parse_rendered(Visualizer.render_frieze(frieze, show_zeros=True))

    assert sorted(hidden) == [0, 1, 2, 3]
    assert shown[-1] == (0,) * 5
    assert shown[4] == (0,) * 5


def test_pentagon_marks_the_closing_row():
    lines = Visualizer.render_frieze(frieze_of(3, 1, 2, 2, 1, rows=4)).splitlines()
    marked = [line for line in lines if CLOSING_MARK in line]

    assert len(marked) == 1
    assert marked[0].startswith("Row 3:")


def test_odd_rows_are_staggered():
    frieze = frieze_of(4, 2, 2, rows=2)
    width = Visualizer.cell_width(frieze, 2)
    lines = Visualizer.render_frieze(frieze).splitlines()

    assert width % 2 == 0
    assert lines[1].startswith("Row 1:") and lines[1][8 : 8 + width // 2].isspace()


def test_invalid_frieze_is_annotated():
    text = Visualizer.render_frieze(frieze_of(2, 1, 1, rows=4))

    assert text.splitlines()[-1].startswith("(invalid")


@pytest.mark.parametrize(
    "value, expected",
    [
        (None, "-"),
        ((7, 1, 4), "(7,1,4)"),
        (True, "yes"),
        (False, "no"),
        (CaseTag.III, "III"),
        (34, "34"),
    ],
)
def test_format_value(value, expected):
    assert Visualizer.format_value(value) == expected


def test_format_matrix():
    assert Visualizer.format_matrix(nabla(FenceWord.parse("DDUD"))) == "[[11,-7],[8,-5]]"
