import os
import sys

import pytest
from hypothesis import HealthCheck, settings

# make the test-side oracle importable as a plain module
sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def bolza():
    from branched_cp1.fuchsian import standard_genus2

    return standard_genus2()


@pytest.fixture(scope="session")
def census():
    from branched_cp1.decomposition import enumerate_k2

    return enumerate_k2(2, 4, 4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
