import re

from core.enums import FriezeStatus
from core.fence import RankMatrix
from core.frieze import Frieze
from tubes.report import TubeReport

ROW_LABEL = re.compile(r"^Row\s+(-?\d+):(.*)$")
CLOSING_MARK = "[closing]"
LABEL_WIDTH = 8


class Visualizer:
    @staticmethod
    def cell_width(frieze: Frieze, rows: int) -> int:
        shown = frieze.rows[: rows + 2]
        widest = max(len(str(entry)) for row in shown for entry in row)
        # Even widths keep the half-cell stagger on whole columns
        return widest + 2 + widest % 2

    @staticmethod
    def row_line(frieze: Frieze, r: int, width: int) -> str:
        """Row r shifted by r/2 cells, wrapped into one period."""
        row = frieze.row(r)
        m = len(row)
        shift = r // 2
        displayed = [row[(j - shift) % m] for j in range(m)]

        indent = " " * (width // 2) if r % 2 else ""
        cells = "".join(f"{entry:>{width}}" for entry in displayed)
        line = f"{'Row ' + str(r) + ':':<{LABEL_WIDTH}}{indent}{cells}"

        if frieze.status is FriezeStatus.CLOSED and r == frieze.status_row:
            line += f"  {CLOSING_MARK}"
        return line

    @staticmethod
    def render_frieze(frieze: Frieze, rows: int | None = None, show_zeros: bool = False) -> str:
        last = frieze.last_row if rows is None else min(rows, frieze.last_row)
        first = -1 if show_zeros else 0
        width = Visualizer.cell_width(frieze, last)

        lines = []
        for r in range(first, last + 1):
            # The 0s below a closing row are hidden with the top row of 0s
            closed_below = frieze.status is FriezeStatus.CLOSED and r > frieze.status_row
            if closed_below and not show_zeros:
                continue
            lines.append(Visualizer.row_line(frieze, r, width))

        if frieze.status is FriezeStatus.INVALID:
            lines.append(f"({frieze.describe_status()})")
        return "\n".join(lines)

    @staticmethod
    def parse_rendered(text: str) -> dict[int, tuple[int, ...]]:
        """Rows of a rendered frieze keyed by row index, in frieze order."""
        rows = {}
        for line in text.splitlines():
            match = ROW_LABEL.match(line)
            if match is None:
                continue

            r = int(match.group(1))
            numbers = match.group(2).replace(CLOSING_MARK, "").split()
            displayed = [int(number) for number in numbers]
            m = len(displayed)
            shift = r // 2
            rows[r] = tuple(displayed[(i + shift) % m] for i in range(m))
        return rows

    @staticmethod
    def format_matrix(m: RankMatrix) -> str:
        return str(m)

    @staticmethod
    def format_value(value) -> str:
        if value is None:
            return "-"
        if type(value) is tuple:
            return "(" + ",".join(map(str, value)) + ")"
        if type(value) is bool:
            return "yes" if value else "no"
        return str(getattr(value, "value", value))

    @staticmethod
    def render_report(report: TubeReport) -> str:
        fields = report.model_dump()
        width = max(map(len, fields))
        return "\n".join(
            f"{name:<{width}}  {Visualizer.format_value(getattr(report, name))}"
            for name in fields
        )
