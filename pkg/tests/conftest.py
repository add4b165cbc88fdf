import pytest

_lines: list[tuple[int, str]] = []


@pytest.fixture
def criterion():
    """record(number, ok, detail): print and remember one PASS/FAIL line."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail}"
        _lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_lines):
            terminalreporter.write_line(line)
