import numpy as np
import pytest

from squidwave.observables import RingConfig

OMEGA1, OMEGA2 = 1.2e-4, 1e-4


@pytest.fixture
def rings():
    """The two rings with the parameter set used for the published figures."""
    return RingConfig(OMEGA1, OMEGA1), RingConfig(OMEGA2, OMEGA2)


@pytest.fixture
def grid():
    # (omega1 - omega2) t in [0, 4 pi], 200 points
    return np.linspace(0.0, 4 * np.pi / (OMEGA1 - OMEGA2), 200)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
