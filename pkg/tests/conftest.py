import time

import pytest

from fdspectral.harness import experiment_config, run_convergence_study

_REPORTS = {}
_TIMES = {}
ACCEPTANCE_LINES = []


def experiment_report(k):
    """Full N = 16..36 sweep for experiment k, computed once per session."""
    if k not in _REPORTS:
        start = time.perf_counter()
        _REPORTS[k] = run_convergence_study(experiment_config(k))
        _TIMES[k] = time.perf_counter() - start
    return _REPORTS[k]


def experiment_seconds(k):
    experiment_report(k)
    return _TIMES[k]


@pytest.fixture(scope="session")
def reports():
    return experiment_report


@pytest.fixture(scope="session")
def acceptance_log():
    def log(criterion, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
