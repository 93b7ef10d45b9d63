import numpy as np
import pytest

from samas.wpt import get_filter

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _CRITERIA.get(report.nodeid)
    if marker is not None:
        number, title, outcomes = marker
        outcomes.append(report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _CRITERIA[item.nodeid] = (m.args[0], m.args[1], [])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    by_number = {}
    for number, title, outcomes in _CRITERIA.values():
        entry = by_number.setdefault(number, [title, [], False])
        entry[1].extend(outcomes)
        entry[2] = entry[2] or bool(outcomes)
    terminalreporter.section("acceptance criteria")
    for number in sorted(by_number):
        title, outcomes, ran = by_number[number]
        if not ran:
            status = "NOT RUN"
        else:
            status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"AC{number:02d} {status:7s} {title}")


@pytest.fixture
def haar():
    return get_filter("haar")


@pytest.fixture
def db4():
    return get_filter("db4")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
