from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higher_brackets.bernoulli import BernoulliCache, bernoulli, bracket_coefficient
from higher_brackets.series import bernoulli_from_series

KNOWN = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
}


@pytest.mark.parametrize("n, value", sorted(KNOWN.items()))
def test_known_values(n, value):
    assert bernoulli(n) == value


def test_bracket_weights():
    assert bracket_coefficient(1) == Fraction(1, 2)
    assert bracket_coefficient(2) == Fraction(1, 12)
    assert bracket_coefficient(3) == 0
    assert bracket_coefficient(4) == Fraction(-1, 720)


@given(st.integers(1, 15).map(lambda k: 2 * k + 1))
def test_odd_bernoulli_vanish(n):
    assert bernoulli(n) == 0


def test_series_inversion_agrees_with_recurrence():
    assert bernoulli_from_series(20) == [bernoulli(n) for n in range(21)]


def test_cache():
    cache = BernoulliCache()
    assert cache[12] == Fraction(-691, 2730)
    assert len(cache.table) == 13
    assert cache.b(2) == Fraction(1, 12)


def test_negative_index():
    with pytest.raises(ValueError):
        bernoulli(-1)
