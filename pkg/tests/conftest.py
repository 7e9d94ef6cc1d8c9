from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ixcalc import fixtures as F  # noqa: E402
from ixcalc.core import StateSpace  # noqa: E402
from ixcalc.istruct import InteractionStructure  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def to_istruct(w, name: str = "w", space: str = "S") -> InteractionStructure:
    """Oracle-style ``(states, table)`` to a package structure."""
    states, table = w
    return InteractionStructure.build(name, StateSpace(space, tuple(states)), table)


@pytest.fixture
def count3():
    return F.count3()


@pytest.fixture
def coin():
    return F.coin()


@pytest.fixture
def magic():
    return F.magic()


@pytest.fixture
def jump2():
    return F.jump2()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
