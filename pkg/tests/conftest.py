import os
from pathlib import Path

import hypothesis
import pytest

from energy_kleene import efun
from energy_kleene.automaton import load_path

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data" / "automata"
GOLDEN = Path(__file__).resolve().parent / "golden"

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def running():
    return load_path(str(DATA / "running.json"))


@pytest.fixture(scope="session")
def labels():
    """The five edge labels of the running example, by name."""
    return {
        "f1": efun.affine(2, 1, 2, True),  # x + 2 on [2, inf)
        "f2": efun.affine(3, 1, 1, False),  # x + 3 on (1, inf)
        "g": efun.affine(-2, 2, 1, True),  # 2x - 2 on [1, inf)
        "h": efun.affine(-1, 1, 1, False),  # x - 1 on (1, inf)
        "k": efun.affine(1, 1, 0, True),  # x + 1 on [0, inf)
    }
