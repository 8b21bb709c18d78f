import itertools
import math

import numpy as np
import pytest

ALPHA_GRID = np.linspace(0.0, 1.0, 5)
P_GRID = np.linspace(0.0, 0.99, 5)
Q_GRID = np.linspace(0.0, 0.99, 5)
R_GRID = np.linspace(0.0, math.pi / 4, 5)


def standard_grid():
    """The 5^4 grid over (alpha, p, q, r)."""
    return list(itertools.product(ALPHA_GRID, P_GRID, Q_GRID, R_GRID))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_density(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_x_state(rng):
    d = rng.random(4)
    d /= d.sum()
    rho = np.diag(d).astype(complex)
    c14 = math.sqrt(d[0] * d[3]) * rng.random() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    c23 = math.sqrt(d[1] * d[2]) * rng.random() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho[0, 3], rho[3, 0] = c14, np.conj(c14)
    rho[1, 2], rho[2, 1] = c23, np.conj(c23)
    return rho


_criteria = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        marker = _criteria_markers.get(report.nodeid)
        if marker is not None:
            _criteria[report.nodeid] = (marker, report.outcome)


_criteria_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria_markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcome in sorted(_criteria.values()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{number:>2} {status}  {title}")
