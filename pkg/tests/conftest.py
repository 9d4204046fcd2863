"""Acceptance summary: one PASS/FAIL line per numbered criterion."""

from __future__ import annotations

_CRITERIA: dict[str, tuple[int, str]] = {}
_OUTCOMES: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA[item.nodeid] = (mark.args[0], mark.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    number, _ = _CRITERIA[report.nodeid]
    if report.failed:
        _OUTCOMES[number] = "FAIL"
    elif report.when == "call" and report.passed and _OUTCOMES.get(number) != "FAIL":
        warned = any(key == "stretch_warning" for key, _ in report.user_properties)
        _OUTCOMES[number] = "WARN" if warned else "PASS"
    elif report.skipped and number not in _OUTCOMES:
        _OUTCOMES[number] = "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    titles = {num: title for num, title in _CRITERIA.values()}
    terminalreporter.section("acceptance criteria")
    for number in sorted(titles):
        status = _OUTCOMES.get(number, "NOT RUN")
        terminalreporter.write_line(f"{status:<7} criterion {number:>2}: {titles[number]}")
