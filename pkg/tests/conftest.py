from pathlib import Path

import numpy as np
import pytest

from surface.triangulation import DiskTriangulation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FIXTURE_NAMES = [
    "case_i_single",
    "case_i_turn",
    "case_ii",
    "case_iii",
    "triangul_quidd",
]


def load_fixture(name: str) -> DiskTriangulation:
    return DiskTriangulation.load(FIXTURES / f"{name}.json")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=FIXTURE_NAMES)
def any_fixture(request) -> DiskTriangulation:
    return load_fixture(request.param)
