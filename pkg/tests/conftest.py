from __future__ import annotations

from itertools import product

import pytest


def words_upto(alphabet: str, n: int) -> list[str]:
    return ["".join(p) for k in range(n + 1) for p in product(alphabet, repeat=k)]


@pytest.fixture(scope="session")
def words6():
    return words_upto("ab", 6)


# acceptance criteria record (number -> (title, passed, detail)); printed after the run
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} ({title}): {'PASS' if ok else 'FAIL'} - {detail}")
