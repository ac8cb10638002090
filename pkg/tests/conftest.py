import math

import numpy as np
import pytest

from lmg_discord.model import XState

ACCEPTANCE_LINES = []


def random_xstate(rng) -> XState:
    """Random valid X state: diagonal weights from a flat Dirichlet, coherences
    uniform inside the positivity disc."""
    a, c, two_b = rng.dirichlet([1.0, 1.0, 1.0])
    b = two_b / 2
    y = rng.uniform(-1, 1) * b
    z = rng.uniform(0, 1) * math.sqrt(a * c) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return XState(a, b, c, y, z)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
