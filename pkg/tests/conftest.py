"""Collects acceptance-criterion verdicts and prints them after the run."""

_criterion_lines = []


def record_criterion(line: str):
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criterion_lines):
            terminalreporter.write_line(line)
