import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from elnet.exact import Mat

# small positive rationals keep exact arithmetic fast
pos_rats = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12).filter(
    lambda q: q > 0
)
rats = st.fractions(min_value=-10, max_value=10, max_denominator=8)


def square_mats(size, elements=rats):
    return st.lists(
        st.lists(elements, min_size=size, max_size=size), min_size=size, max_size=size
    ).map(Mat)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
