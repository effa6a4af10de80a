import numpy as np
import pytest


def disk_points(rng, n, radius=0.9):
    r = radius * np.sqrt(rng.uniform(size=n))
    return list(r * np.exp(2j * np.pi * rng.uniform(size=n)))


def plane_points(rng, n, scale=1.5):
    return list(scale * (rng.normal(size=n) + 1j * rng.normal(size=n)))


def separated(pts, gap=1e-2):
    return min(abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1:]) > gap


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
