import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ci", suppress_health_check=(HealthCheck.too_slow,), deadline=None)
settings.register_profile("dev", deadline=None)
settings.load_profile("ci" if os.environ.get("CI") else "dev")

SUITE_BUDGET_S = 60.0
_results = []
_start = time.perf_counter()


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, passed, detail)``."""

    def record(label, passed, detail=""):
        _results.append((label, bool(passed), detail))
        return passed

    return record


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    if _results:
        ok = elapsed < SUITE_BUDGET_S
        _results.append(("7c full suite runtime < 60 s", ok, f"{elapsed:.1f} s"))
        if not ok:
            session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
