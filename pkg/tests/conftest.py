import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from semipolar.suites import run_suite

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_SEED = 7
_acceptance_lines = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def full_report():
    """The complete suite at the acceptance seed, computed once per session."""
    return run_suite("all", seed=ACCEPTANCE_SEED)


@pytest.fixture
def record():
    def _record(line):
        _acceptance_lines.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
