from functools import lru_cache

import numpy as np
import pytest

from loopkit.catalog import enumerate_loops
from loopkit.table import Permutation


@lru_cache(maxsize=None)
def catalog(n):
    return enumerate_loops(n)


def loops_upto(n):
    return [t for k in range(1, n + 1) for t in catalog(k)]


def random_perm(rng, n, fix_identity=False):
    if fix_identity:
        return Permutation([0] + list(rng.permutation(np.arange(1, n)) if n > 1 else []))
    return Permutation(rng.permutation(n))


@pytest.fixture(scope="session")
def upto5():
    return loops_upto(5)


@pytest.fixture(scope="session")
def order6():
    return list(catalog(6))


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


# lines recorded by test_acceptance, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
