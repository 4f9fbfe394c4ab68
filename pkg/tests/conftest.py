import numpy as np
import pytest

from fuzzylc.koszul import Metric
from fuzzylc.triple import build_triple


def random_element(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return a / np.max(np.abs(a))


def random_metric(rng):
    """Random complex symmetric 3x3 matrix, well away from singular."""
    while True:
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        G = A + A.T
        if np.linalg.cond(G) < 1e3:
            return Metric(G)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def t1():
    return build_triple(1)


@pytest.fixture(scope="session")
def t2():
    return build_triple(2)


# PASS/FAIL lines recorded by the acceptance suite, echoed in the summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
