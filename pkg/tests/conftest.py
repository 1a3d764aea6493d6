from __future__ import annotations

from pathlib import Path

import pytest

from garside.core import parse_presentation
from garside.oracle import build_index
from garside.reversing import LEFT, build_complement_table, cube_check
from garside.ybe import Solution

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def ex2():
    return parse_presentation((DATA / "example2.pres").read_text())


@pytest.fixture(scope="session")
def fig2():
    return parse_presentation((DATA / "fig2.pres").read_text())


@pytest.fixture(scope="session")
def idx(ex2):
    return build_index(ex2, 8)


@pytest.fixture(scope="session")
def idx4(ex2):
    return build_index(ex2, 4)


@pytest.fixture(scope="session")
def ct(ex2, idx4):
    return cube_check(build_complement_table(ex2), idx4).table


@pytest.fixture(scope="session")
def ct_left(ex2):
    return build_complement_table(ex2, LEFT)


@pytest.fixture(scope="session")
def sol1():
    return Solution.from_json((DATA / "example1.json").read_text())


ACCEPTANCE: dict[int, tuple[str, bool, float, float]] = {}


def record_acceptance(number: int, title: str, passed: bool, elapsed: float, limit: float) -> None:
    ACCEPTANCE[number] = (title, passed and elapsed < limit, elapsed, limit)
    status = "PASS" if ACCEPTANCE[number][1] else "FAIL"
    print(f"criterion {number:>2}: {status}  {title} ({elapsed:.2f}s, limit {limit:g}s)")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, elapsed, limit = ACCEPTANCE[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title} ({elapsed:.2f}s, limit {limit:g}s)")
