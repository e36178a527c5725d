import logging
import sys

from pydantic import ValidationError

from cli.commands import (
    AnnulusCommand,
    BandCommand,
    Command,
    DiskAnalyzeCommand,
    DiskGenCommand,
    DiskVerifyCommand,
    FenceCommand,
    FriezeCommand,
    GrowthCommand,
    PolygonCommand,
)
from core.enums import FriezeStatus, OutputFormat
from core.errors import FriezeError, GeneratorError, InvalidPolygonTriangulation, SizeLimitError
from core.fence import CyclicWord, band_count, delta, ideal_count, nabla, segment_vector
from core.frieze import annulus_band, annulus_quiddities, generate, growth, polygon_quiddity
from surface.generator import GeneratorParams, random_polygon_diagonals, random_triangulation
from surface.triangulation import DiskTriangulation
from tubes.report import tube_report
from tubes.verify import VerificationRunner
from utils.visualization import Visualizer

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def run(command: Command) -> int:
    try:
        if type(command) is FriezeCommand:
            return run_frieze(command)
        elif type(command) is GrowthCommand:
            return run_growth(command)
        elif type(command) is FenceCommand:
            return run_fence(command)
        elif type(command) is BandCommand:
            return run_band(command)
        elif type(command) is PolygonCommand:
            return run_polygon(command)
        elif type(command) is AnnulusCommand:
            return run_annulus(command)
        elif type(command) is DiskAnalyzeCommand:
            return run_disk_analyze(command)
        elif type(command) is DiskGenCommand:
            return run_disk_gen(command)
        elif type(command) is DiskVerifyCommand:
            return run_disk_verify(command)
        else:
            raise ValueError(f"Unknown command {type(command).__name__}")
    except (SizeLimitError, InvalidPolygonTriangulation, GeneratorError) as error:
        return _fail(f"error: {error}", EXIT_USAGE)


def run_frieze(command: FriezeCommand) -> int:
    frieze = generate(command.quiddity, command.rows)
    print(Visualizer.render_frieze(frieze, command.rows, command.show_zeros))
    if frieze.status is FriezeStatus.INVALID:
        return _fail(f"{command.quiddity}: {frieze.describe_status()}", EXIT_FAILED)
    return EXIT_OK


def run_growth(command: GrowthCommand) -> int:
    try:
        value = growth(command.quiddity)
    except FriezeError as error:
        return _fail(f"error: {error}", EXIT_FAILED)

    print(f"s = {value.s}")
    for k in range(2, command.k + 1):
        print(f"s_{k} = {value.s_k(k)}")
    return EXIT_OK


def run_fence(command: FenceCommand) -> int:
    word = command.word
    print(f"segments: {','.join(map(str, segment_vector(word)))}")
    print(f"ideals: {ideal_count(word)}")
    print(f"nabla: {Visualizer.format_matrix(nabla(word))}")
    print(f"delta: {Visualizer.format_matrix(delta(word))}")
    return EXIT_OK


def run_band(command: BandCommand) -> int:
    band = CyclicWord(word=command.word)
    print(f"closed subsets: {band_count(band)}")
    print(f"degenerate: {Visualizer.format_value(band.is_degenerate)}")
    return EXIT_OK


def run_polygon(command: PolygonCommand) -> int:
    diagonals = command.diagonals
    if diagonals is None:
        diagonals = random_polygon_diagonals(command.seed, command.n)
        logger.info(f"Random diagonals for seed {command.seed}: {diagonals}")

    quiddity = polygon_quiddity(command.n, list(diagonals))
    frieze = generate(quiddity, command.n)
    print(f"quiddity: {quiddity}")
    print(Visualizer.render_frieze(frieze))
    return EXIT_OK


def run_annulus(command: AnnulusCommand) -> int:
    outer, inner = annulus_quiddities(command.word)
    band = annulus_band(command.word)
    print(f"outer: {outer}")
    print(f"inner: {inner}")
    try:
        print(f"growth outer: {growth(outer).s}")
        print(f"growth inner: {growth(inner).s}")
    except FriezeError as error:
        return _fail(f"error: {error}", EXIT_FAILED)
    print(f"band trace: {band_count(band)}")
    return EXIT_OK


def run_disk_analyze(command: DiskAnalyzeCommand) -> int:
    try:
        t = DiskTriangulation.load(command.input)
    except FileNotFoundError:
        return _fail(f"error: {command.input} does not exist", EXIT_USAGE)
    except ValidationError as error:
        return _fail(f"error: {command.input} is not a triangulation file\n{error}", EXIT_USAGE)
    except OSError as error:
        return _fail(f"error: cannot read {command.input}: {error}", EXIT_USAGE)

    report = tube_report(t)
    if command.format is OutputFormat.MACHINE:
        print(report.model_dump_json())
    else:
        print(Visualizer.render_report(report))

    if report.failed_stage == "validate":
        return EXIT_USAGE
    if report.failed_stage is not None:
        return EXIT_FAILED
    return EXIT_OK


def run_disk_gen(command: DiskGenCommand) -> int:
    params = GeneratorParams(
        b=command.b, p=command.p, q=command.q, case=command.case, ears=command.ears
    )
    t = random_triangulation(command.seed, params)
    if command.out is None:
        print(t.model_dump_json(indent=2))
    else:
        t.dump(command.out)
        logger.info(f"Wrote {command.out}")
    return EXIT_OK


def run_disk_verify(command: DiskVerifyCommand) -> int:
    runner = VerificationRunner(
        seed=command.seed,
        b_max=command.b_max,
        p_max=command.p_max,
        q_max=command.q_max,
    )
    result = runner.run(command.count, progress=command.progress)

    for instance in result.failures:
        report = instance.report
        print(
            f"FAIL seed={instance.seed} b={instance.params.b} p={instance.params.p} "
            f"q={instance.params.q} ears={instance.params.ears} "
            f"stage={report.failed_stage or '-'} growths={report.growths()}"
        )
    print(
        f"verified {len(result.instances)} instances from seed {command.seed}: "
        f"{len(result.failures)} failures"
    )
    return EXIT_OK if result.ok else EXIT_FAILED
