import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import unit_rationals
from eprop.space import (
    CIRCLE_SPACE,
    INTERVAL_UNION_SPACE,
    binary_digit,
    circle_distance,
    dyadic_length,
    finite_space,
    format_rational,
    format_real,
    is_dyadic,
    parse_rational,
    prefix_stats,
    unit_rational,
)


def digits_by_doubling(x: Fraction, k: int) -> list[int]:
    """Independent long division: double, take the integer part, repeat."""
    out = []
    for _ in range(k):
        x *= 2
        d = 1 if x >= 1 else 0
        out.append(d)
        x -= d
    return out


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (0, 0, 0.0),
        (0, Fraction(1, 2), 2.0),
        (0, Fraction(1, 4), math.sqrt(2)),
        (Fraction(1, 8), Fraction(7, 8), math.sqrt(2)),
    ],
)
def test_circle_distance_values(x, y, expected):
    assert circle_distance(x, y) == pytest.approx(expected, abs=1e-15)


def test_circle_distance_matches_embedding():
    for x, y in [(Fraction(1, 3), Fraction(5, 7)), (Fraction(0), Fraction(9, 10))]:
        px = (math.cos(2 * math.pi * x), math.sin(2 * math.pi * x))
        py = (math.cos(2 * math.pi * y), math.sin(2 * math.pi * y))
        assert circle_distance(x, y) == pytest.approx(math.dist(px, py), abs=1e-12)


@given(unit_rationals, unit_rationals, unit_rationals)
def test_circle_metric_axioms(x, y, z):
    dxy = circle_distance(x, y)
    assert 0 <= dxy <= 2
    assert dxy == circle_distance(y, x)
    assert (dxy == 0) == (x == y)
    assert circle_distance(x, z) <= dxy + circle_distance(y, z) + 1e-12


def test_binary_digit_examples():
    assert binary_digit(Fraction(1, 2), 1) == 1
    assert binary_digit(Fraction(1, 2), 2) == 0
    assert all(binary_digit(0, i) == 0 for i in range(1, 40))
    third = Fraction(1, 3)
    assert [binary_digit(third, i) for i in range(1, 11)] == [0, 1] * 5


def test_binary_digit_index_starts_at_one():
    with pytest.raises(ValueError):
        binary_digit(Fraction(1, 3), 0)


@given(unit_rationals, st.integers(1, 40))
def test_binary_digit_matches_long_division(x, k):
    assert [binary_digit(x, i) for i in range(1, k + 1)] == digits_by_doubling(x, k)


@given(unit_rationals.filter(is_dyadic))
def test_dyadic_expansion_terminates_in_zeros(x):
    K = dyadic_length(x)
    assert all(binary_digit(x, i) == 0 for i in range(K + 1, K + 40))


@pytest.mark.parametrize(
    "x, k, expected",
    [
        (Fraction(5, 8), 3, (2, Fraction(0))),
        (Fraction(0), 7, (0, Fraction(0))),
        (Fraction(1, 3), 2, (1, Fraction(1, 3))),
    ],
)
def test_prefix_stats_examples(x, k, expected):
    assert prefix_stats(x, k) == expected


@given(unit_rationals, st.integers(1, 40))
def test_digits_reconstruct_the_point(x, k):
    m, y = prefix_stats(x, k)
    digits = digits_by_doubling(x, k)
    assert m == sum(digits)
    assert 0 <= y < 1
    assert sum(Fraction(d, 2**i) for i, d in enumerate(digits, start=1)) + y / 2**k == x


def test_parse_and_format_rationals():
    assert parse_rational("-13/8") == Fraction(-13, 8)
    assert parse_rational(" 3 ") == 3
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(0) == "0/1"
    with pytest.raises(ValueError, match="weights"):
        parse_rational("1/0", "weights")
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_format_real_keeps_a_decimal_point():
    assert format_real(1) == "1.0"
    assert format_real(0.5) == "0.5"
    assert format_real(math.sqrt(2)) == "1.41421356237"


def test_point_validation():
    assert unit_rational("1/3") == Fraction(1, 3)
    with pytest.raises(ValueError):
        unit_rational(1)
    with pytest.raises(TypeError):
        CIRCLE_SPACE.validate(0.25)
    assert INTERVAL_UNION_SPACE.validate(Fraction(-3, 2)) == Fraction(-3, 2)
    with pytest.raises(ValueError):
        INTERVAL_UNION_SPACE.validate(Fraction(-1, 2))


def test_finite_space_checks_metric_axioms():
    sp = finite_space(["a", "b", "c"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert sp.distance("a", "c") == 2.0
    with pytest.raises(ValueError, match="triangle"):
        finite_space(["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    with pytest.raises(ValueError, match="symmetric"):
        finite_space(["a", "b"], [[0, 1], [2, 0]])
    with pytest.raises(ValueError, match="diagonal"):
        finite_space(["a", "b"], [[0, 0], [0, 0]])


def test_large_distance_matrix_agrees_with_pairwise_metric():
    pts = [Fraction(k * 37 % 101, 101) for k in range(101)]
    D = CIRCLE_SPACE.distance_matrix(pts)
    for i in range(0, 101, 7):
        for j in range(101):
            assert D[i, j] == pytest.approx(circle_distance(pts[i], pts[j]), abs=1e-14)
    assert all(D[i, i] == 0 for i in range(101))
