"""Bernoulli numbers in the ``x/(e^x - 1)`` convention (so B_1 = -1/2)."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Return B_n, with sum_n B_n x^n / n! = x / (e^x - 1).

    Uses sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        total += math.comb(n + 1, j) * bernoulli(j)
    return -total / (n + 1)


@lru_cache(maxsize=None)
def bracket_coefficient(n: int) -> Fraction:
    """Weight (-1)^n B_n / n! of the (n+1)-ary bracket; b_1 = 1/2, b_2 = 1/12."""
    return (-1) ** n * bernoulli(n) / math.factorial(n)


class BernoulliCache:
    """Memoized table of B_n; concurrent fills compute identical values."""

    def __init__(self):
        self._table = [Fraction(1)]

    def __getitem__(self, n: int) -> Fraction:
        while len(self._table) <= n:
            self._table.append(bernoulli(len(self._table)))
        return self._table[n]

    def b(self, n: int) -> Fraction:
        return bracket_coefficient(n)

    @property
    def table(self):
        return tuple(self._table)
