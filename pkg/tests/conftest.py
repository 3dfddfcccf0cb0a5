import functools
import sys
import random

import pytest

from tsw.existence import random_triangulation
from tsw.fixtures import get_fixture

CORPUS_SIZE = 200
CORPUS_MAX_N = 12


@functools.lru_cache(maxsize=None)
def corpus_map(seed: int):
    rng = random.Random(seed)
    n = rng.randint(1, CORPUS_MAX_N)
    return random_triangulation(n, rng)


def corpus(count: int = CORPUS_SIZE):
    return [corpus_map(s) for s in range(count)]


@functools.lru_cache(maxsize=None)
def crossing(name_or_seed):
    from tsw.existence import crossing_wood

    m = get_fixture(name_or_seed) if isinstance(name_or_seed, str) else corpus_map(name_or_seed)
    return crossing_wood(m)


@pytest.fixture
def k7():
    return get_fixture("k7")


@pytest.fixture
def f1():
    return get_fixture("three-loops")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.pytest_lines():
        terminalreporter.write_line(line)
