import time

import pytest
from hypothesis import HealthCheck, settings

from freepairs.scenarios import run_all

# fixed seed, at least 100 cases per property
settings.register_profile(
    "repo",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

_timing = {}


@pytest.fixture(scope="session")
def reports():
    """Every scenario report at the default seed, computed once per session."""
    started = time.perf_counter()
    out = {r.id: r for r in run_all()}
    _timing["run_all"] = time.perf_counter() - started
    return out


@pytest.fixture(scope="session")
def suite_seconds(reports):
    return _timing["run_all"]


# -- acceptance bookkeeping ------------------------------------------------------------------------

_acceptance_lines: dict[int, str] = {}
_outcomes: dict[str, str] = {}


def pytest_collection_modifyitems(session, config, items):
    # acceptance checks run last so they can see the property-test outcomes
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


def pytest_runtest_logreport(report):
    if report.failed:
        _outcomes[report.nodeid] = "failed"
    elif report.when == "call":
        _outcomes.setdefault(report.nodeid, report.outcome)


@pytest.fixture
def outcomes():
    return _outcomes


@pytest.fixture
def record():
    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _acceptance_lines[number] = line
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_acceptance_lines):
            terminalreporter.write_line(_acceptance_lines[n])
