import argparse
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from core.enums import CaseTag, OutputFormat
from core.fence import FenceWord
from core.frieze import Quiddity, check_annulus_word
from tubes.verify import VerificationRunner


class Command(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    verbose: bool = False


class FriezeCommand(Command):
    quiddity: Quiddity
    rows: int = Field(default=6, ge=1)
    show_zeros: bool = False


class GrowthCommand(Command):
    quiddity: Quiddity
    k: int = Field(default=1, ge=1)


class FenceCommand(Command):
    word: FenceWord


class BandCommand(Command):
    word: FenceWord


class PolygonCommand(Command):
    n: int = Field(ge=3)
    diagonals: tuple[tuple[int, int], ...] | None = None
    seed: int = 0


class AnnulusCommand(Command):
    word: str


class DiskAnalyzeCommand(Command):
    input: Path
    format: OutputFormat = OutputFormat.TEXT


class DiskGenCommand(Command):
    seed: int
    b: int = Field(ge=2)
    p: int = Field(ge=1)
    q: int = Field(ge=1)
    case: CaseTag = CaseTag.I
    ears: int = Field(default=0, ge=0)
    out: Path | None = None


class DiskVerifyCommand(Command):
    count: int = Field(ge=0)
    seed: int = 0
    b_max: int = Field(default=VerificationRunner.B_MAX, ge=2)
    p_max: int = Field(default=VerificationRunner.P_MAX, ge=1)
    q_max: int = Field(default=VerificationRunner.Q_MAX, ge=1)
    progress: bool = False


def _typed(parse):
    def convert(text: str):
        try:
            return parse(text)
        except ValueError as error:
            raise argparse.ArgumentTypeError(str(error))

    convert.__name__ = parse.__name__
    return convert


def _diagonals(text: str) -> tuple[tuple[int, int], ...]:
    """`1-3,1-4` -> ((1, 3), (1, 4)); an empty string is a triangle."""
    if not text.strip():
        return ()
    pairs = []
    for part in text.split(","):
        ends = part.split("-")
        if len(ends) != 2:
            raise ValueError(f"Diagonal must look like i-j, got {part!r}")
        pairs.append((int(ends[0]), int(ends[1])))
    return tuple(pairs)


def _annulus_word(text: str) -> str:
    check_annulus_word(text)
    return text


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"Expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(f"Expected a non-negative integer, got {value}")
    return value


quiddity_arg = _typed(Quiddity.parse)
word_arg = _typed(FenceWord.parse)
diagonals_arg = _typed(_diagonals)
annulus_word_arg = _typed(_annulus_word)
positive_arg = _typed(_positive)
non_negative_arg = _typed(_non_negative)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tube-friezes",
        description="Exact friezes, fence posets and tubes of the twice-punctured disk",
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_frieze = subparsers.add_parser("frieze", help="Print the staggered rows of a frieze")
    p_frieze.add_argument("--quiddity", type=quiddity_arg, required=True, help="e.g. 4,2,2")
    p_frieze.add_argument("--rows", type=positive_arg, default=6, help="Rows below the 1s")
    p_frieze.add_argument("--show-zeros", action="store_true", help="Keep the rows of 0s")

    p_growth = subparsers.add_parser("growth", help="Growth coefficient s and s_k")
    p_growth.add_argument("--quiddity", type=quiddity_arg, required=True, help="e.g. 4,2,2")
    p_growth.add_argument("--k", type=positive_arg, default=1, help="Print s_1 .. s_k")

    p_fence = subparsers.add_parser("fence", help="Order ideals and rank matrices of a fence")
    p_fence.add_argument("--word", type=word_arg, required=True, help="U/D string")

    p_band = subparsers.add_parser("band", help="Closed subsets of a cyclic fence")
    p_band.add_argument("--word", type=word_arg, required=True, help="U/D string")

    p_polygon = subparsers.add_parser("polygon", help="Conway-Coxeter frieze of an n-gon")
    p_polygon.add_argument("--n", type=positive_arg, required=True)
    p_polygon.add_argument(
        "--diagonals", type=diagonals_arg, default=None, help="e.g. 1-3,1-4; random if omitted"
    )
    p_polygon.add_argument("--seed", type=int, default=0, help="Seed for a random triangulation")

    p_annulus = subparsers.add_parser("annulus", help="Friezes of a bridging annulus triangulation")
    p_annulus.add_argument("--word", type=annulus_word_arg, required=True, help="O/I string")

    p_disk = subparsers.add_parser("disk", help="Triangulations of the twice-punctured disk")
    disk_commands = p_disk.add_subparsers(dest="disk_command", required=True)

    p_analyze = disk_commands.add_parser("analyze", help="Tube report of a triangulation file")
    p_analyze.add_argument("--input", type=Path, required=True)
    p_analyze.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value
    )

    p_gen = disk_commands.add_parser("gen", help="Generate a triangulation file")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--b", type=positive_arg, required=True)
    p_gen.add_argument("--p", type=positive_arg, required=True)
    p_gen.add_argument("--q", type=positive_arg, required=True)
    p_gen.add_argument("--case", choices=[c.value for c in CaseTag], default=CaseTag.I.value)
    p_gen.add_argument("--ears", type=non_negative_arg, default=0)
    p_gen.add_argument("--out", type=Path, default=None, help="stdout if omitted")

    p_verify = disk_commands.add_parser(
        "verify", help="Check the growth identity on random instances"
    )
    p_verify.add_argument("--random", type=non_negative_arg, required=True, dest="count")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--b", type=positive_arg, default=VerificationRunner.B_MAX, dest="b_max")
    p_verify.add_argument(
        "--pmax", type=positive_arg, default=VerificationRunner.P_MAX, dest="p_max"
    )
    p_verify.add_argument(
        "--qmax", type=positive_arg, default=VerificationRunner.Q_MAX, dest="q_max"
    )
    p_verify.add_argument("--progress", action="store_true", help="Progress bar on stderr")

    return parser


def parse_args(argv: list[str]) -> Command:
    parser = build_parser()
    args = parser.parse_args(argv)
    common = {"verbose": args.verbose}

    match args.command:
        case "frieze":
            fields = dict(quiddity=args.quiddity, rows=args.rows, show_zeros=args.show_zeros)
            command_type = FriezeCommand
        case "growth":
            fields = dict(quiddity=args.quiddity, k=args.k)
            command_type = GrowthCommand
        case "fence":
            fields = dict(word=args.word)
            command_type = FenceCommand
        case "band":
            fields = dict(word=args.word)
            command_type = BandCommand
        case "polygon":
            fields = dict(n=args.n, diagonals=args.diagonals, seed=args.seed)
            command_type = PolygonCommand
        case "annulus":
            fields = dict(word=args.word)
            command_type = AnnulusCommand
        case "disk":
            command_type, fields = _disk_fields(args)

    try:
        return command_type(**common, **fields)
    except ValueError as error:
        parser.error(str(error))


def _disk_fields(args: argparse.Namespace) -> tuple[type[Command], dict]:
    match args.disk_command:
        case "analyze":
            return DiskAnalyzeCommand, dict(input=args.input, format=OutputFormat(args.format))
        case "gen":
            return DiskGenCommand, dict(
                seed=args.seed,
                b=args.b,
                p=args.p,
                q=args.q,
                case=CaseTag(args.case),
                ears=args.ears,
                out=args.out,
            )
        case "verify":
            return DiskVerifyCommand, dict(
                count=args.count,
                seed=args.seed,
                b_max=args.b_max,
                p_max=args.p_max,
                q_max=args.q_max,
                progress=args.progress,
            )
