import random

import numpy as np
import pytest

from siaindex.patterns import BooleanPattern


def naive_product(a: BooleanPattern, b: BooleanPattern) -> BooleanPattern:
    """Textbook triple loop on 0/1 lists."""
    n = a.n
    x, y = a.to_lists(), b.to_lists()
    rows = [[int(any(x[i][k] and y[k][j] for k in range(n))) for j in range(n)] for i in range(n)]
    return BooleanPattern.from_rows(rows)


def random_pattern(rng: random.Random, n: int, density: float = 0.4) -> BooleanPattern:
    rows = []
    for _ in range(n):
        row = [int(rng.random() < density) for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = 1
        rows.append(row)
    return BooleanPattern.from_rows(rows)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def nprng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
