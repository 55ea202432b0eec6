import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    def report(number: int, title: str, passed: bool, detail: str = "") -> bool:
        line = f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {title}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
