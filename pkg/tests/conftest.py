import numpy as np
import pytest

from gnflow import PeriodicGrid

ACCEPTANCE_LINES = []


@pytest.fixture
def circle():
    return PeriodicGrid(2 * np.pi, 64)


@pytest.fixture
def box():
    return PeriodicGrid(80.0, 1024)


def smooth_periodic(grid, rng, modes=4, scale=1.0):
    """Random trigonometric polynomial with a few low modes."""
    f = np.zeros(grid.n)
    for m in range(1, modes + 1):
        a, b = rng.normal(size=2) / m**2
        kx = 2 * np.pi * m * grid.x / grid.length
        f += a * np.cos(kx) + b * np.sin(kx)
    return scale * f / np.max(np.abs(f))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
