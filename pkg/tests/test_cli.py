import pytest

from cli import main
from cli.commands import DiskVerifyCommand, FenceCommand, GrowthCommand, parse_args
from conftest import FIXTURES
from core.enums import CaseTag
from core.frieze import Quiddity
from tubes.report import TubeReport
from utils.visualization import Visualizer


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_growth():
    command = parse_args(["growth", "--quiddity", "2,3"])

    assert command == GrowthCommand(quiddity=Quiddity(entries=(2, 3)))


def test_parse_fence():
    command = parse_args(["--verbose", "fence", "--word", "DDUD"])

    assert type(command) is FenceCommand
    assert str(command.word) == "DDUD"
    assert command.verbose


def test_parse_verify_defaults():
    command = parse_args(["disk", "verify", "--random", "5"])

    assert command == DiskVerifyCommand(count=5)


@pytest.mark.parametrize(
    "argv",
    [
        ["fence", "--word", "DXUD"],
        ["growth", "--quiddity", "4,0,2"],
        ["growth", "--quiddity", "4,2,2", "--k", "0"],
        ["annulus", "--word", "OOO"],
        ["polygon", "--n", "5", "--diagonals", "1-3,14"],
        ["disk", "gen", "--seed", "1", "--b", "1", "--p", "1", "--q", "1"],
        ["disk", "verify"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exit_info:
        parse_args(argv)

    assert exit_info.value.code == 2


def test_growth_output(capsys):
    code, out, _ = run_cli(capsys, "growth", "--quiddity", "4,2,2")

    assert code == 0
    assert out.splitlines() == ["s = 8"]


def test_growth_powers(capsys):
    code, out, _ = run_cli(capsys, "growth", "--quiddity", "2,3", "--k", "3")

    assert code == 0
    assert out.splitlines() == ["s = 4", "s_2 = 14", "s_3 = 52"]


def test_growth_of_a_closing_frieze_fails(capsys):
    code, _, err = run_cli(capsys, "growth", "--quiddity", "1,1")

    assert code == 1
    assert "error" in err


def test_fence_output(capsys):
    code, out, _ = run_cli(capsys, "fence", "--word", "DDUD")

    assert code == 0
    assert out.splitlines() == [
        "segments: 2,1,1",
        "ideals: 11",
        "nabla: [[11,-7],[8,-5]]",
        "delta: [[7,4],[5,3]]",
    ]


def test_band_output(capsys):
    code, out, _ = run_cli(capsys, "band", "--word", "UDU")

    assert code == 0
    assert out.splitlines() == ["closed subsets: 7", "degenerate: no"]


def test_frieze_output_parses_back(capsys):
    code, out, _ = run_cli(capsys, "frieze", "--quiddity", "4,2,2", "--rows", "3")
    rows = Visualizer.parse_rendered(out)

    assert code == 0
    assert rows[0] == (1, 1, 1)
    assert rows[1] == (4, 2, 2)
    assert sorted(rows[2]) == [3, 7, 7]
    assert -1 not in rows


def test_invalid_frieze_exits_1(capsys):
    code, out, err = run_cli(capsys, "frieze", "--quiddity", "2,1,1")

    assert code == 1
    assert "(invalid" in out
    assert "(2,1,1)" in err


def test_polygon_output(capsys):
    code, out, _ = run_cli(capsys, "polygon", "--n", "5", "--diagonals", "1-3,1-4")

    assert code == 0
    assert out.splitlines()[0] == "quiddity: (3,1,2,2,1)"
    assert "[closing]" in out


def test_random_polygon_is_seeded(capsys):
    _, first, _ = run_cli(capsys, "polygon", "--n", "8", "--seed", "3")
    _, second, _ = run_cli(capsys, "polygon", "--n", "8", "--seed", "3")

    assert first == second
    assert "[closing]" in first


def test_bad_polygon_exits_2(capsys):
    code, _, err = run_cli(capsys, "polygon", "--n", "4", "--diagonals", "1-3,2-4")

    assert code == 2
    assert "error" in err


def test_annulus_output(capsys):
    code, out, _ = run_cli(capsys, "annulus", "--word", "OIIOO")

    assert code == 0
    assert out.splitlines() == [
        "outer: (4,2,2)",
        "inner: (2,5)",
        "growth outer: 8",
        "growth inner: 8",
        "band trace: 8",
    ]


def test_analyze_text_report(capsys):
    code, out, _ = run_cli(
        capsys, "disk", "analyze", "--input", str(FIXTURES / "triangul_quidd.json")
    )
    lines = dict(line.split(None, 1) for line in out.splitlines())

    assert code == 0
    assert lines["case"] == "I"
    assert lines["quid1"] == "(7,1,4,2,2)"
    assert lines["growth_formula"] == "34"
    assert lines["all_equal"] == "yes"
    assert lines["failed_stage"] == "-"


def test_analyze_machine_report(capsys):
    path = str(FIXTURES / "case_ii.json")
    code, out, _ = run_cli(capsys, "disk", "analyze", "--input", path, "--format", "machine")
    report = TubeReport.model_validate_json(out)

    assert code == 0
    assert report.case is CaseTag.II
    assert report.growths() == (7,) * 6

    _, again, _ = run_cli(capsys, "disk", "analyze", "--input", path, "--format", "machine")
    assert again == out


def test_analyze_missing_file(tmp_path, capsys):
    code, _, err = run_cli(capsys, "disk", "analyze", "--input", str(tmp_path / "none.json"))

    assert code == 2
    assert "does not exist" in err


def test_analyze_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"boundary_points": 2}')

    code, _, _ = run_cli(capsys, "disk", "analyze", "--input", str(path))

    assert code == 2


def test_generate_then_analyze(tmp_path, capsys):
    path = tmp_path / "t.json"
    argv = ["disk", "gen", "--seed", "4", "--b", "5", "--p", "2", "--q", "2", "--ears", "1"]
    code, _, _ = run_cli(capsys, *argv, "--out", str(path))
    assert code == 0
    assert path.exists()

    code, out, _ = run_cli(capsys, "disk", "analyze", "--input", str(path), "--format", "machine")
    report = TubeReport.model_validate_json(out)

    assert code == 0
    assert (report.case, report.p, report.q) == (CaseTag.I, 2, 2)
    assert report.boundary_points == 6
    assert report.all_equal


def test_generate_to_stdout_is_deterministic(capsys):
    argv = ["disk", "gen", "--seed", "9", "--b", "2", "--p", "3", "--q", "3", "--case", "II"]
    argv += ["--ears", "2"]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)

    assert first == second
    assert '"boundary_points": 4' in first


def test_infeasible_generation_exits_2(capsys):
    code, _, err = run_cli(capsys, "disk", "gen", "--seed", "1", "--b", "2", "--p", "4", "--q", "3")

    assert code == 2
    assert "error" in err


@pytest.mark.parametrize("count, seed", [(10, 7), (100, 42)])
def test_verify(count, seed, capsys):
    code, out, _ = run_cli(capsys, "disk", "verify", "--random", str(count), "--seed", str(seed))

    assert code == 0
    assert out.splitlines()[-1] == f"verified {count} instances from seed {seed}: 0 failures"


def test_analyze_undecodable_file(tmp_path, capsys):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe{\x00}")

    code, _, err = run_cli(capsys, "disk", "analyze", "--input", str(path))

    assert code == 2
    assert "error" in err


def test_analyze_directory(tmp_path, capsys):
    code, _, err = run_cli(capsys, "disk", "analyze", "--input", str(tmp_path))

    assert code == 2
    assert "cannot read" in err
