"""Collects the acceptance verdicts and prints them after the run."""

import contextlib

import pytest

_VERDICTS = {}


@pytest.fixture
def criterion():
    """``with criterion(n, "label") as note:`` records PASS/FAIL for check n;
    ``note(text)`` attaches the measured values to the printed line."""

    @contextlib.contextmanager
    def _check(number, label):
        details = []
        try:
            yield details.append
        except BaseException:
            _VERDICTS[number] = ("FAIL", label, "; ".join(details))
            raise
        _VERDICTS[number] = ("PASS", label, "; ".join(details))

    return _check


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        status, label, details = _VERDICTS[number]
        line = f"[{number:2d}] {status} {label}"
        terminalreporter.write_line(line + (f" ({details})" if details else ""))
