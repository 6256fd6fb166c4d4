import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"
sys.path.insert(0, str(Path(__file__).resolve().parent))

# frozen from tests/oracles.py (sympy ranks of Taylor ⊗ k, sympy series)
FROZEN_TOR = {
    "fourgen": (1, 4, 4, 1),
    "pentagon": (1, 5, 5, 1),
    "avramov": (1, 5, 7, 4, 1),
    "katthan": (1, 8, 14, 8, 1),
}
FROZEN_SERRE = {
    "fourgen": [1, 4, 10, 24, 58, 140, 338, 816, 1970],
    "pentagon": [1, 5, 15, 40, 106, 281, 745, 1975, 5236],
    "avramov": [1, 4, 11, 31, 88, 249, 705, 1996, 5651],
    "katthan": [1, 5, 18, 64, 227, 806, 2861, 10156, 36052],
}

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load(name: str):
    from golodkit import load_ideal

    return load_ideal(fixture_path(f"{name}.ideal"))


def load_matching(name: str):
    import json

    from golodkit import Matching

    with open(fixture_path(f"{name}.matching.json"), encoding="utf-8") as fh:
        return Matching.from_json(json.load(fh))


@pytest.fixture
def fourgen():
    return load("fourgen")


@pytest.fixture
def pentagon():
    return load("pentagon")


@pytest.fixture
def avramov():
    return load("avramov")


@pytest.fixture
def katthan():
    return load("katthan")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {line}")
