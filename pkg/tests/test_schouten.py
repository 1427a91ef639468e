import itertools

import pytest

from higher_brackets.algebra import Element
from higher_brackets.derived import DerivedStructure
from higher_brackets.dgla import UnknownSymbolError, validate
from higher_brackets.linfinity import jacobi_defect
from higher_brackets.presets.schouten import (
    SCHOUTEN_SIGN,
    PoissonError,
    SchoutenDgla,
    lie_poisson_sl2,
    lie_poisson_so3,
    parse_monomial,
    poisson_bracket_derived,
    poisson_differential,
    symplectic_plane,
)


def test_sign_is_frozen():
    assert SCHOUTEN_SIGN == -1


def test_vector_field_on_function():
    s = SchoutenDgla(2)
    assert str(s.bracket(s.theta(1), s.x(1))) == "1"
    assert str(s.bracket(s.x(1), s.theta(1))) == "-1"
    assert s.bracket(s.theta(1), s.x(2)) == 0


def test_functions_commute():
    s = SchoutenDgla(2)
    assert s.bracket(s.x(1), s.x(2)) == 0


def test_validator_passes_on_window():
    s = lie_poisson_sl2()
    report = validate(s, s.monomial_window(2, 2), jacobi_triples="sorted")
    assert report.ok, report.violation


def test_opposite_sign_breaks_antisymmetry():
    s = SchoutenDgla(2, sign=1)
    report = validate(s, s.monomial_window(1, 1))
    assert not report.ok
    assert report.violation.axiom == "graded antisymmetry"


def test_grading():
    s = SchoutenDgla(3)
    assert s.x(1).degree == 1
    assert s.theta(2).degree == 0
    assert s.theta(1, 3).degree == -1
    assert s.theta(3, 1) == -s.theta(1, 3)
    assert s.theta(1, 1) == 0


@pytest.mark.parametrize("name", ["x1^2x2t1t3", "1", "t2", "x3^4"])
def test_monomial_names_roundtrip(name):
    s = SchoutenDgla(3)
    assert str(Element.basis(s.symbol(name))) == name


@pytest.mark.parametrize("bad", ["x4", "t1t1", "t2t1", "t1^2", "y1"])
def test_monomial_parse_errors(bad):
    with pytest.raises(UnknownSymbolError):
        parse_monomial(bad, 3)


def test_symplectic_differential():
    s = symplectic_plane()
    assert str(s.differential(s.x(1))) == "-t2"
    assert str(s.differential(s.x(2))) == "t1"


def test_symplectic_poisson_bracket():
    s = symplectic_plane()
    derived, classical = poisson_bracket_derived(s, s.x(1), s.x(2))
    assert str(derived) == str(classical) == "-1"
    same, _ = poisson_bracket_derived(s, s.x(1), s.x(1))
    assert same == 0


def test_lie_poisson_tensors():
    assert str(lie_poisson_sl2().poisson) == "x1t2t3 + 2*x2t1t2 - 2*x3t1t3"
    assert str(lie_poisson_so3().poisson) == "x1t2t3 - x2t1t3 + x3t1t2"
    for alg in (lie_poisson_sl2(), lie_poisson_so3()):
        assert alg.bracket(alg.poisson, alg.poisson) == 0


def test_master_equation_failure():
    s = SchoutenDgla(3)
    bad = Element.basis(s.symbol("x2t2t3")) + s.theta(1, 2)
    assert str(s.bracket(bad, bad)) == "2*t1t2t3"
    with pytest.raises(PoissonError):
        SchoutenDgla(3, bad)


def test_poisson_tensor_must_be_bivector():
    s = SchoutenDgla(2)
    with pytest.raises(ValueError):
        SchoutenDgla(2, s.theta(1))
    with pytest.raises(ValueError):
        SchoutenDgla(0)


def test_differential_squares_to_zero():
    s = lie_poisson_so3()
    d = poisson_differential(s.poisson, 3)
    for sym in s.monomial_window(2, 2):
        assert d(d(Element.basis(sym))) == 0


def test_sl2_poisson_brackets_and_jacobi():
    s = lie_poisson_sl2()
    window = [Element.basis(m) for m in s.function_window(2)]
    st = DerivedStructure(s)
    for f, g in itertools.product(window, repeat=2):
        derived, classical = poisson_bracket_derived(s, f, g)
        assert derived == classical == st(f, g)
    linear = [Element.basis(m) for m in s.function_window(1)]
    for combo in itertools.combinations_with_replacement(linear, 3):
        assert jacobi_defect(st, 2, list(combo)) == 0


def test_linear_bracket_recovers_structure_constants():
    s = lie_poisson_sl2()
    # x1 = h, x2 = e: {h, e} is a multiple of e
    value, _ = poisson_bracket_derived(s, s.x(1), s.x(2))
    assert value.symbols() and {str(Element.basis(m)) for m in value.symbols()} == {"x2"}


def test_derived_bracket_requires_functions():
    s = symplectic_plane()
    with pytest.raises(ValueError):
        poisson_bracket_derived(s, s.theta(1), s.x(1))


def test_no_basis_enumeration():
    from higher_brackets.dgla import BasisUnavailable

    with pytest.raises(BasisUnavailable):
        SchoutenDgla(2).basis()
