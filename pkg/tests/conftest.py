import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Context manager: time a criterion, record one PASS/FAIL line for it.

    The lines are replayed in the terminal summary, so they are visible in a
    default (captured) pytest run as well.
    """

    @contextmanager
    def check(number: int, label: str, budget: float | None = None):
        started = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - started
            if budget is not None and elapsed >= budget:
                raise AssertionError(
                    f"criterion {number} took {elapsed:.1f}s, over its {budget:.0f}s budget"
                )
        except BaseException:
            line = f"[criterion {number:2d}] {label}: FAIL"
            _ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        timing = f"{elapsed:.2f}s" + (f", budget {budget:.0f}s" if budget else "")
        line = f"[criterion {number:2d}] {label}: PASS ({timing})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
