from __future__ import annotations

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config: pytest.Config) -> None:
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request: pytest.FixtureRequest):
    """Record one pass/fail line for an acceptance criterion and print it."""
    lines = request.config.stash[_LINES]

    def record(number: int, ok: bool, text: str) -> bool:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config: pytest.Config) -> None:
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
