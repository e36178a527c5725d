import logging
import sys

from .commands import parse_args
from .runner import run


def main(argv: list[str]) -> int:
    command = parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if command.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return run(command)
