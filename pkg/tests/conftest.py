import time

import pytest

from tournament_entropy import enumeration

CRITERIA = {
    1: "4-tournament power-sum table",
    2: "5-tournament power-sum table",
    3: "Hasse diagrams of the 5-tournament orders",
    4: "h2 and score-sequence counts",
    5: "H2/H3 extremal classes, n = 4..7",
    6: "regular tournament counts",
    7: "H4 extremes on regular tournaments",
    8: "t4 lower bounds",
    9: "doubly regular spectrum",
    10: "3-tournament closed forms",
    11: "von Neumann series, eigen and walk agreement",
    12: "von Neumann entropy bounds",
    13: "power-sum oracle equivalence",
}

_outcomes: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _outcomes.setdefault(marker.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in CRITERIA.items():
        results = _outcomes.get(k)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d} {status}: {title}")


@pytest.fixture(scope="session")
def regular():
    """Regular tournaments for n = 3..11, enumerated once without caches, with timings."""
    out, seconds = {}, {}
    for n in (3, 5, 7, 9, 11):
        start = time.perf_counter()
        certs = enumeration._regular_classes(n)
        seconds[n] = time.perf_counter() - start
        out[n] = [enumeration.Tournament(n, c) for c in certs]
    return out, seconds
