from functools import lru_cache

import pytest

from tesscurv.generators import hyperbolic_ball, kagome_family_ball, parse_schedule, schedule_triangulation


@lru_cache(maxsize=None)
def hyperbolic(p, q, R):
    return hyperbolic_ball(p, q, R)


@lru_cache(maxsize=None)
def kagome(polygon, R):
    return kagome_family_ball(polygon, R)


@lru_cache(maxsize=None)
def schedule(text, R):
    return schedule_triangulation(parse_schedule(text), R)


@pytest.fixture(scope="session")
def h73():
    return hyperbolic(7, 3, 8)


@pytest.fixture(scope="session")
def h45():
    return hyperbolic(4, 5, 7)


@pytest.fixture(scope="session")
def h37():
    return hyperbolic(3, 7, 6)


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"C{n:<2} {'PASS' if ok else 'FAIL'}  {detail}")
