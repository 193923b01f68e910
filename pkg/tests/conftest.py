import gc

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _relaxed_gc():
    # measure evaluation allocates heavily; the default gen-0 threshold
    # triggers full collections far too often
    old = gc.get_threshold()
    gc.set_threshold(100_000, old[1], old[2])
    yield
    gc.set_threshold(*old)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
