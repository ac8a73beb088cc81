import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: dict[str, list] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if report.when == "call":
        _acceptance[report.nodeid] = [
            props.get("criterion", report.nodeid), report.outcome, report.duration, props.get("summary", "")
        ]
    elif report.failed and report.nodeid in _acceptance:
        # the runtime budget is enforced at teardown
        _acceptance[report.nodeid][1] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit, outcome, secs, summary in sorted(_acceptance.values()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {status} ({secs:.2f}s) {summary}")
