"""Collects one pass/fail line per acceptance criterion and prints them at the end."""

import pytest

_LINES: dict[int, tuple[bool, str]] = {}


class Recorder:
    def __call__(self, number: int, passed: bool, detail: str):
        _LINES[number] = (passed, detail)
        # also visible with -s or in captured output of a failing test
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})")
        return passed


@pytest.fixture
def record():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        passed, detail = _LINES[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
