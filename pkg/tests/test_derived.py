import itertools
from fractions import Fraction

import pytest

from higher_brackets.algebra import Element
from higher_brackets.derived import (
    DerivedStructure,
    WindowError,
    d_operator,
    explicit_binary,
    explicit_ternary,
    jacobi_term_decomposition,
    z_expression,
)
from higher_brackets.linfinity import check_symmetry, is_lie_n, jacobi_defect


def elems(g, *names):
    return [g.element(n) for n in names]


def test_unary_bracket(sl2_xi_eta):
    st = DerivedStructure(sl2_xi_eta)
    (a,) = elems(sl2_xi_eta, "h.xi")
    assert st(a) == 0
    assert d_operator(sl2_xi_eta, a) == sl2_xi_eta.differential(a) != 0
    # degree > 1: the differential itself
    (b,) = elems(sl2_xi_eta, "h.xi.eta")
    assert st(b) == sl2_xi_eta.differential(b) != 0
    assert DerivedStructure(sl2_xi_eta, convention="corrected")(b) == -st(b)


def test_frozen_values(sl2_xi_eta):
    st = DerivedStructure(sl2_xi_eta)
    hx, ex, he = elems(sl2_xi_eta, "h.xi", "e.xi", "h.eta")
    assert str(st(hx, ex)) == "2*e.xi"
    assert str(st(hx, ex, he)) == "-e.xi.eta"
    assert st(he) == 0


def test_two_high_degree_inputs_bracket_to_zero(sl2_xi_eta):
    st = DerivedStructure(sl2_xi_eta)
    assert st(*elems(sl2_xi_eta, "h.eta", "e.eta")) == 0


def test_nonpositive_input_rejected(sl2_xi_eta):
    with pytest.raises(WindowError):
        DerivedStructure(sl2_xi_eta)(*elems(sl2_xi_eta, "h", "h.xi"))


def test_unknown_convention(sl2_xi_eta):
    with pytest.raises(ValueError):
        DerivedStructure(sl2_xi_eta, convention="other")


def test_binary_and_ternary_formulas(sl2_xi_eta):
    st = DerivedStructure(sl2_xi_eta)
    window = [Element.basis(s) for s in sl2_xi_eta.basis() if s.degree > 0]
    for a, b in itertools.product(window, repeat=2):
        assert st(a, b) == explicit_binary(sl2_xi_eta, a, b)
    for a, b, c in itertools.product(window, repeat=3):
        assert st(a, b, c) == explicit_ternary(sl2_xi_eta, a, b, c)


def test_literal_ternary_sign_differs(sl2_xi_eta):
    a = elems(sl2_xi_eta, "h.eta", "e.xi", "h.xi")
    assert str(DerivedStructure(sl2_xi_eta)(*a)) == "e.xi.eta"
    assert str(explicit_ternary(sl2_xi_eta, *a, literal=True)) == "1/3*e.xi.eta"


def test_graded_symmetry(heisenberg):
    st = DerivedStructure(heisenberg)
    window = [Element.basis(s) for s in heisenberg.basis() if s.degree > 0]
    for args in itertools.product(window, repeat=3):
        assert check_symmetry(st, list(args)).ok


def test_n2_counterexample_under_stated_sign(sl2_xi_eta):
    args = elems(sl2_xi_eta, "h.xi", "e.xi", "h.eta")
    stated = DerivedStructure(sl2_xi_eta)
    defect = jacobi_defect(stated, 2, args)
    assert str(defect) == "-2*e.eta"
    # the defect is Z_{2,1,0} / 2
    assert defect == z_expression(sl2_xi_eta, 2, 1, 0, args) * Fraction(1, 2)
    assert jacobi_defect(DerivedStructure(sl2_xi_eta, convention="corrected"), 2, args) == 0


@pytest.mark.parametrize("convention", ["stated", "corrected"])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_jacobi_holds_off_n2(heisenberg, convention, n):
    st = DerivedStructure(heisenberg, convention=convention)
    window = [Element.basis(s) for s in heisenberg.basis() if s.degree > 0]
    for combo in itertools.combinations_with_replacement(window, n + 1):
        assert jacobi_defect(st, n, list(combo)) == 0


def test_corrected_jacobi_n2_on_xi_eta(sl2_xi_eta):
    st = DerivedStructure(sl2_xi_eta, convention="corrected")
    window = [Element.basis(s) for s in sl2_xi_eta.basis() if s.degree > 0]
    for combo in itertools.combinations_with_replacement(window, 3):
        assert jacobi_defect(st, 2, list(combo)) == 0


def test_inhomogeneous_inputs_expand(heisenberg):
    st = DerivedStructure(heisenberg)
    a, b, c = elems(heisenberg, "q", "p.xi", "q.xi")
    assert st(a + c, b) == st(a, b) + st(c, b)
    assert jacobi_defect(st, 1, [a + c, b]) == jacobi_defect(st, 1, [a, b]) + jacobi_defect(st, 1, [c, b])


def test_z_frozen_values_and_recurrence(sl2_xi_eta):
    args = elems(sl2_xi_eta, "h.xi", "e.xi", "h.eta")
    z = lambda j, k: z_expression(sl2_xi_eta, 2, j, k, args)
    assert str(z(1, 0)) == "-4*e.eta"
    assert z(0, 0) == z(1, 0) * 2
    assert z(0, 1) == z(1, 0)
    assert z(0, 0) == z(1, 0) + z(0, 1)


def test_z_argument_checks(sl2_xi_eta):
    args = elems(sl2_xi_eta, "h.xi", "e.xi", "h.eta")
    with pytest.raises(ValueError):
        z_expression(sl2_xi_eta, 2, 1, 1, args)
    with pytest.raises(ValueError):
        z_expression(sl2_xi_eta, 3, 0, 0, args)


@pytest.mark.parametrize("convention", ["stated", "corrected"])
def test_strata_match_z_combinations(sl2_xi_eta, convention):
    st = DerivedStructure(sl2_xi_eta, convention=convention)
    window = [Element.basis(s) for s in sl2_xi_eta.basis() if s.degree > 0]
    for n in (2, 3):
        for combo in itertools.islice(itertools.combinations_with_replacement(window, n + 1), 0, None, 7):
            strata = jacobi_term_decomposition(st, n, list(combo))
            assert [s.label for s in strata] == ["k=0,n", "k=1"] + [f"k={k}" for k in range(2, n)]
            for s in strata:
                assert s.ok, (s.label, combo)
            assert Element.sum(s.direct for s in strata) == jacobi_defect(st, n, list(combo))


def test_lie2_shape(sl2_lie2):
    st = DerivedStructure(sl2_lie2, max_arity=5)
    window = [s for s in sl2_lie2.basis() if s.degree > 0]
    assert {s.degree for s in window} == {1, 2}
    assert is_lie_n(st, 2, window).ok
    assert str(st(*elems(sl2_lie2, "h.zeta", "e.zeta"))) == "2*e.zeta"
