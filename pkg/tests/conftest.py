from __future__ import annotations

import re

_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = m.group(1)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "SKIP" if report.skipped else "PASS" if report.passed else "FAIL"
        _results[key] = (outcome, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance scoreboard")
    for key in sorted(_results, key=int):
        outcome, title = _results[key]
        terminalreporter.write_line(f"criterion {int(key):2d}  {outcome:4s}  {title}")
