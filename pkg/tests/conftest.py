import random

import pytest

from polarcode.core import CodeConfig

EXAMPLE8 = CodeConfig(3, (1, 3, 5, 6, 7))


def decrement_schedule(n):
    """Working addresses per row from decrement counters, the way a hardware scheduler would.

    Each counter starts at 2**lam - 1 and, after every row, wraps from 0 to
    2**lam before being decremented. Yields (phi, a) for phi = N-1 .. 0.
    Kept independent of ``schedule_indices`` on purpose.
    """
    N = 1 << n
    a = [(1 << lam) - 1 for lam in range(n)]
    a[0] = 0
    for phi in range(N - 1, -1, -1):
        yield phi, tuple(a)
        for lam in range(1, n):
            if a[lam] == 0:
                a[lam] = 1 << lam
            a[lam] -= 1


@pytest.fixture
def rng():
    return random.Random(12345)


_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and rep.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        notes = getattr(item, "acceptance_notes", [])
        _acceptance.append((item.name, rep.outcome, doc, notes))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, doc, notes in _acceptance:
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome)
        terminalreporter.write_line(f"{verdict:4}  {doc}")
        for note in notes:
            terminalreporter.write_line(f"      {note}")
