import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higher_brackets.algebra import (
    BasisSymbol,
    Element,
    Permutation,
    RationalParseError,
    format_rational,
    koszul_sign,
    parse_rational,
    unshuffles,
)

A = BasisSymbol("a", 1)
B = BasisSymbol("b", 2)
C = BasisSymbol("c", 1)


def el(sym, c=1):
    return Element.basis(sym, c)


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), (" 4 / 6 ", Fraction(2, 3)), (7, Fraction(7))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1.5", "1/0", "x", "", True, 0.5, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(RationalParseError):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 4)) == "-3/4"


def test_element_cancels_to_zero():
    e = el(A, 2) + el(B) - el(A, 2) - el(B)
    assert not e
    assert e == 0
    assert str(e) == "0"


def test_element_str_is_canonical():
    assert str(el(B, Fraction(-1, 3)) + el(A)) == str(el(A) - el(B, Fraction(1, 3)))


def test_scalar_multiplication_and_components():
    e = el(A, 3) + el(B)
    assert e * 0 == 0
    assert (e * Fraction(1, 3)).coefficient(A) == 1
    assert e.degrees() == {1, 2}
    assert not e.is_homogeneous()
    assert e.homogeneous_component(2) == el(B)


def test_permutation_composition_acts_right_to_left():
    s, t = Permutation([1, 2, 0]), Permutation([0, 2, 1])
    seq = ["x", "y", "z"]
    assert (s * t).act(seq) == s.act(t.act(seq))
    assert (s * s.inverse()) == Permutation.identity(3)


def test_permutation_rejects_non_permutation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_koszul_sign_of_transposition():
    assert koszul_sign([1, 0], [1, 1]) == -1
    assert koszul_sign([1, 0], [1, 2]) == 1
    assert koszul_sign([1, 0], [2, 2]) == 1


def test_koszul_sign_length_mismatch():
    with pytest.raises(ValueError):
        koszul_sign([1, 0], [1])


perm_and_degrees = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.permutations(range(n)), st.permutations(range(n)), st.lists(st.sampled_from([0, 1, 2]), min_size=n, max_size=n)
    )
)


@given(perm_and_degrees)
def test_koszul_sign_is_multiplicative(data):
    p, q, degs = data
    sigma, tau = Permutation(p), Permutation(q)
    # reorder by tau first, then by sigma acting on the reordered degrees
    lhs = koszul_sign(sigma * tau, degs)
    rhs = koszul_sign(tau, degs) * koszul_sign(sigma, tau.act(degs))
    assert lhs == rhs


@given(perm_and_degrees)
def test_koszul_sign_even_degrees_is_trivial(data):
    p, _, degs = data
    assert koszul_sign(p, [2 * d for d in degs]) == 1


@given(st.integers(0, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_unshuffle_count(nk):
    n, k = nk
    splits = list(unshuffles(n, k))
    assert len(splits) == math.comb(n + 1, k + 1)
    for inner, outer, perm in splits:
        assert list(inner) == sorted(inner) and list(outer) == sorted(outer)
        assert sorted(inner + outer) == list(range(n + 1))
        assert perm.images == tuple(inner + outer)


def test_unshuffles_bounds():
    with pytest.raises(ValueError):
        list(unshuffles(2, 3))


def test_components_roundtrip():
    e = el(A) + el(B, 5) + el(C, -1)
    assert Element.sum(e.components().values()) == e
    assert set(e.components()) == {1, 2}


def test_hash_matches_equality():
    assert hash(el(A) + el(B)) == hash(el(B) + el(A))
    assert len({el(A) + el(B), el(B) + el(A)}) == 1


@given(st.lists(st.tuples(st.sampled_from([A, B, C]), st.fractions(max_denominator=9)), max_size=6))
def test_addition_is_commutative(terms):
    parts = [el(s, c) for s, c in terms]
    forward = Element.sum(parts)
    backward = Element.sum(reversed(parts))
    assert forward == backward
    assert forward - backward == 0
    assert list(itertools.chain(forward.sorted_items())) == list(backward.sorted_items())
