from fractions import Fraction

import pytest
from hypothesis import strategies as st

ACCEPTANCE_LOG: dict = {}

unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=10**4).filter(lambda q: q < 1)
ex2_points = st.one_of(
    st.fractions(min_value=-2, max_value=-1, max_denominator=10**4),
    st.fractions(min_value=0, max_value=1, max_denominator=10**4),
)
small_weights = st.fractions(min_value=-3, max_value=3, max_denominator=64)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LOG, key=lambda s: int(s[1:])):
        ok, detail = ACCEPTANCE_LOG[key]
        terminalreporter.write_line(f"{key:>4} {'PASS' if ok else 'FAIL'}  {detail}")


def F(s) -> Fraction:
    return Fraction(s)
