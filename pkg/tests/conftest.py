import functools

import pytest
from hypothesis import HealthCheck, settings

from improperlab.corpus import graphs_by_order

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@functools.lru_cache(maxsize=None)
def corpus(max_n, connected=False, interval=False):
    return tuple(graphs_by_order(max_n, connected=connected, interval=interval))


@pytest.fixture(scope="session")
def interval6():
    return [g for _, g in corpus(6, interval=True)]


@pytest.fixture(scope="session")
def interval7():
    return [g for _, g in corpus(7, interval=True)]


@pytest.fixture(scope="session")
def graphs6():
    return [g for _, g in corpus(6)]


# ---------------------------------------------------------------------------
# one pass/fail line per acceptance criterion

_CRITERIA: dict[int, dict] = {}
_NODE_CRITERION: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("criterion")
        if mark:
            num, title = mark.args
            _CRITERIA.setdefault(num, {"title": title, "outcomes": []})
            _NODE_CRITERION[item.nodeid] = num


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = _NODE_CRITERION.get(report.nodeid)
    if num is not None:
        _CRITERIA[num]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        entry = _CRITERIA[num]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        elif any(o == "failed" for o in outcomes):
            status = "FAIL"
        else:
            status = "SKIP"
        tr.write_line(f"criterion {num:2d} {status:7s} {entry['title']} "
                      f"[{len(outcomes)} test{'s' if len(outcomes) != 1 else ''}]")
