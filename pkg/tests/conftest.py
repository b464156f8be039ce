import pytest

_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion; printed at the end of the run."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        line = f"[{number:>2}] {status}  {title}"
        if detail:
            line += f"  ({detail})"
        _LINES.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
