import numpy as np
import pytest

from conedepth import ConeV, DegenerateCone, UnsupportedCone

# filled by test_acceptance; printed after the run
ACCEPTANCE = {}


def random_cone(rng, min_sine=0.0):
    """Pointed cone from two random generators with angle strictly inside (0, pi)."""
    while True:
        b1, b2 = rng.normal(size=2), rng.normal(size=2)
        sine = abs(b1[0] * b2[1] - b1[1] * b2[0]) / (np.hypot(*b1) * np.hypot(*b2))
        if sine <= max(min_sine, 1e-6):
            continue
        try:
            return ConeV(tuple(b1), tuple(b2))
        except (DegenerateCone, UnsupportedCone):
            continue


def lattice(rng, n, hi=20):
    return rng.integers(0, hi + 1, size=(n, 2)).astype(float)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {line}")
