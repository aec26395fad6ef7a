import json
import random
from pathlib import Path

import pytest

from quiver.core import Group, Quiver, QuiverTheory, standard_quiver
from utilities.read_theory_file import read_theory_file

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def load_fixture(name: str):
    theory, _ = read_theory_file(FIXTURES / name)
    return theory


def unframed(kind: str, rank: int, v, group: Group = Group.PROD_GL_MOD_CENTER) -> QuiverTheory:
    quiver = standard_quiver(kind, rank)
    return QuiverTheory(quiver, tuple(v), (0,) * quiver.rank, group)


def framed(kind: str, rank: int, v, w) -> QuiverTheory:
    return QuiverTheory(standard_quiver(kind, rank), tuple(v), tuple(w), Group.PROD_GL)


def write_theory(directory: Path, name: str, payload: dict) -> Path:
    path = directory / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def a2() -> Quiver:
    return standard_quiver("a", 2)
