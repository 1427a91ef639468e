from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higher_brackets.algebra import BasisSymbol, Element
from higher_brackets.linfinity import ArityError, LInfinity, check_symmetry, is_lie_n, jacobi_defect, jacobi_report

X = BasisSymbol("x", 1)
Y = BasisSymbol("y", 1)
W = BasisSymbol("w", 2)


class Toy(LInfinity):
    """{x, y} = w = -{y, x} on the two degree-1 symbols; everything else is zero.

    Swapping two degree-1 inputs costs a Koszul sign, so this is graded
    symmetric, and w (degree 2) brackets to zero so Jacobi holds.
    """

    def bracket_of_symbols(self, symbols):
        if len(symbols) == 2 and symbols[0] != symbols[1] and {s.degree for s in symbols} == {1}:
            return Element.basis(W, 1 if symbols[0] == X else -1)
        return Element.zero()


class Broken(LInfinity):
    """Not symmetric: depends on argument order."""

    def bracket_of_symbols(self, symbols):
        if len(symbols) == 2 and symbols[0] == X and symbols[1] == Y:
            return Element.basis(W)
        return Element.zero()


def test_arity_bounds():
    t = Toy(max_arity=3)
    with pytest.raises(ArityError):
        t.evaluate([])
    with pytest.raises(ArityError):
        t.evaluate([Element.basis(X)] * 4)
    with pytest.raises(ArityError):
        jacobi_defect(t, 1, [Element.basis(X)])
    with pytest.raises(ArityError):
        jacobi_defect(t, 3, [Element.basis(X)] * 4)


def test_symmetry_detects_order_dependence():
    x, y = Element.basis(X), Element.basis(Y)
    assert check_symmetry(Toy(), [x, y]).ok
    bad = check_symmetry(Broken(), [x, y])
    assert not bad.ok and bad.position == 1


def test_memo_uses_canonical_order():
    x, y = Element.basis(X), Element.basis(Y)
    t = Toy()
    assert t(x, y) == -t(y, x) == Element.basis(W)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(coeffs, coeffs, coeffs)
def test_multilinearity(p, q, r):
    t = Toy()
    x, y = Element.basis(X), Element.basis(Y)
    lhs = t(x * p + y * q, y * r)
    rhs = t(x, y) * (p * r) + t(y, y) * (q * r)
    assert t(y, y) == 0
    assert lhs == rhs


def test_jacobi_on_toy():
    x, y = Element.basis(X), Element.basis(Y)
    # w has degree 2 and every bracket involving it vanishes
    assert jacobi_defect(Toy(), 2, [x, y, x]) == 0
    report = jacobi_report(Toy(), 1, [x, y])
    assert report.ok and report.as_dict()["arity"] == 1


def test_jacobi_with_zero_argument():
    assert jacobi_defect(Toy(), 1, [Element.zero(), Element.basis(X)]) == 0


def test_is_lie_n():
    assert is_lie_n(Toy(max_arity=3), 1, [X, Y]).ok
    out_of_range = is_lie_n(Toy(), 1, [X, W])
    assert not out_of_range.ok and "outside" in out_of_range.reason

    class Ternary(Toy):
        def bracket_of_symbols(self, symbols):
            if len(symbols) == 3:
                return Element.basis(X, Fraction(1, 2))
            return super().bracket_of_symbols(symbols)

    nonzero = is_lie_n(Ternary(max_arity=3), 1, [X])
    assert not nonzero.ok and "arity-3" in nonzero.reason
