from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance verdict: ``criterion(number, passed, detail)``."""

    def record(number: int, passed: bool, detail: str) -> None:
        _RESULTS[number] = (bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        passed, detail = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
