from __future__ import annotations

import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance_log() -> list[str]:
    return _LINES


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s[2 : s.index(" ")])):
            terminalreporter.write_line(line)
