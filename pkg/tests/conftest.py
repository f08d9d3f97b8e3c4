import pytest

_RESULTS = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, title, passed, detail=""):
        _RESULTS[number] = (title, passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, passed, detail = _RESULTS[number]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number} [{status}] {title}"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
