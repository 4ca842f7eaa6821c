import pytest

_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""
    def emit(number, ok, detail):
        line = "criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
        print(line)
        _LINES.append(line)
        assert ok, line
    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
