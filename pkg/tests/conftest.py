import random

import pytest

from surface_cert.linalg import SparseIntMatrix


def random_sparse(rng: random.Random, max_dim=50, max_density=0.1, max_abs=9):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    density = rng.uniform(0.0, max_density)
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                v = rng.randint(-max_abs, max_abs)
                if v:
                    entries[(i, j)] = v
    return SparseIntMatrix(rows, cols, entries)


@pytest.fixture
def rng():
    return random.Random(20240607)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
