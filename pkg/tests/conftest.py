import random

import pytest
from hypothesis import strategies as st

from wfembed.ordinal import ZERO, Ordinal

ACCEPTANCE_LINES = []


def random_ordinal(rng: random.Random, depth: int = 4, max_coef: int = 9, max_terms: int = 3) -> Ordinal:
    """Random ordinal of exponent nesting at most ``depth``; built term by term, so may need normalizing."""
    if depth <= 1 or rng.random() < 0.3:
        k = rng.randint(0, max_coef)
        return Ordinal.from_int(k)
    terms = [(random_ordinal(rng, depth - 1, max_coef, max_terms), rng.randint(1, max_coef))
             for _ in range(rng.randint(0, max_terms))]
    return Ordinal(terms)


def ordinals(depth: int = 3):
    if depth <= 1:
        return st.integers(0, 9).map(Ordinal.from_int)
    term = st.tuples(ordinals(depth - 1), st.integers(1, 9))
    return st.lists(term, max_size=3).map(Ordinal)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
