"""Suite-wide configuration.

Collects the acceptance tests' outcomes and prints one line per
criterion at the end of the run.
"""

from __future__ import annotations

_acceptance_reports: dict[str, object] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    # setup-phase skips are the only interesting non-call reports
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _acceptance_reports[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_reports:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_acceptance_reports):
        report = _acceptance_reports[nodeid]
        if report.passed:
            outcome = "PASS"
        elif report.skipped:
            outcome = "SKIP"
        else:
            outcome = "FAIL"
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{outcome:4s}  {name}")
