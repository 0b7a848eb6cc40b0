import time
from contextlib import contextmanager

import pytest

_RESULTS: list[tuple[str, bool, str]] = []


class Criterion:
    def __init__(self, label: str, limit_s: float | None):
        self.label = label
        self.limit_s = limit_s
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)


@pytest.fixture
def criterion():
    """Time a block, record PASS/FAIL for the end-of-run acceptance summary."""

    @contextmanager
    def run(label: str, limit_s: float | None = None):
        c = Criterion(label, limit_s)
        start = time.perf_counter()
        try:
            yield c
            elapsed = time.perf_counter() - start
            if limit_s is not None:
                assert elapsed < limit_s, f"took {elapsed:.1f}s, limit {limit_s}s"
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _RESULTS.append((label, False, f"{elapsed:.2f}s; {type(exc).__name__}: {exc}"))
            raise
        detail = "; ".join([f"{elapsed:.2f}s"] + c.notes)
        _RESULTS.append((label, True, detail))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({detail})")
