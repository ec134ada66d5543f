import numpy as np
import pytest

from jbgrassmann import make_projection


def unit(n, i, j):
    """Matrix unit E_ij (1-based) in C^{n x n}."""
    m = np.zeros((n, n), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return m


def opn(x):
    return float(np.linalg.norm(np.asarray(x), 2))


@pytest.fixture
def e11():
    return make_projection(unit(2, 1, 1))


@pytest.fixture
def e22():
    return make_projection(unit(2, 2, 2))


@pytest.fixture
def half():
    # projection onto (e1 + e2)/sqrt 2
    return make_projection(np.full((2, 2), 0.5))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
