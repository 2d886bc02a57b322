import itertools
from pathlib import Path

import pytest

from clusterhall.quiver import Quiver, orientations, type_a, type_d

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


def all_orientations(n: int, family: str = "A") -> list[Quiver]:
    base = type_a(n) if family == "A" else type_d(n)
    return list(orientations(base))


def theorem_quivers() -> list[Quiver]:
    """Both A2 orientations, all A3, alternating and equioriented A4 and A5,
    all D4, one D5."""
    qs = all_orientations(2) + all_orientations(3)
    for n in (4, 5):
        qs += [type_a(n, "alt"), type_a(n, "equi")]
    qs += all_orientations(4, "D")
    qs.append(type_d(5))
    return qs


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
