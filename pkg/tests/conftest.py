import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def record(label: str):
        ACCEPTANCE_LINES.append((request.node.nodeid, label))
    yield record


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for i, (nodeid, label) in enumerate(ACCEPTANCE_LINES):
        if nodeid == report.nodeid and not label.startswith(("PASS", "FAIL")):
            ACCEPTANCE_LINES[i] = (nodeid, f"{'PASS' if report.passed else 'FAIL'}  {label}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
