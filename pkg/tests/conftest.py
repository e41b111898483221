import random

import pytest
from hypothesis import strategies as st

from factorum.generate import CLASSES, random_instance, small_admissible

ACCEPTANCE_LINES = []


@st.composite
def seeded_instances(draw, max_n=7, max_m=10, classes=CLASSES):
    seed = draw(st.integers(0, 2**32 - 1))
    return small_admissible(random.Random(seed), max_n=max_n, max_m=max_m, classes=classes)


@st.composite
def g_instances(draw, max_n=7, max_m=10):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    m = rng.randint(1, min(max_m, n * (n - 1) // 2))
    return random_instance(rng, n, m, classes=("interval", "parity"))


@pytest.fixture
def record_acceptance():
    def rec(line):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return rec


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
