from functools import partial

import pytest

from higher_brackets import cone as cone_mod
from higher_brackets.algebra import Element
from higher_brackets.cone import (
    ConeStructure,
    ConstraintError,
    DglaMorphism,
    PathElement,
    cone_element,
    cone_jacobi_check,
    contraction_check,
    contraction_survey,
    include,
    path_algebra_check,
    path_bracket,
    path_differential,
    split,
    transport,
    transport_agreement,
)
from higher_brackets.derived import DerivedStructure


@pytest.fixture(scope="module")
def xi12():
    from higher_brackets.presets import build_finite

    return build_finite("sl2_xi12")


@pytest.fixture(scope="module")
def phi(heisenberg):
    return DglaMorphism.inclusion(heisenberg)


def test_inclusion_is_a_morphism(phi):
    assert phi.check() is None
    assert all(s.degree <= 0 for s in phi.source.basis())


def test_cone_degrees(phi, heisenberg):
    p = heisenberg.element("p")
    x = cone_element(p, None)
    assert x.degree == 1
    k, l = split(x + cone_element(None, heisenberg.element("q")))
    assert k == p and l == heisenberg.element("q")


def test_cone_jacobi(phi, xi12):
    assert cone_jacobi_check(ConeStructure(phi, max_arity=4), 3) is None
    assert cone_jacobi_check(ConeStructure(DglaMorphism.inclusion(xi12), max_arity=4), 3) is None


def test_cone_degree_sign_fails_at_n1(xi12):
    cone = ConeStructure(DglaMorphism.inclusion(xi12), max_arity=3, pair_sign_degree="cone")
    n, _, _ = cone_jacobi_check(cone, 3)
    assert n == 1


def test_unary_on_k(phi, heisenberg):
    cone = ConeStructure(phi)
    p = heisenberg.element("p")
    assert split(cone(cone_element(p, None))) == (Element.zero(), p)


def test_transport_arities(sl2_xi_eta):
    phi = DglaMorphism.inclusion(sl2_xi_eta)
    cone = ConeStructure(phi, max_arity=4)
    derived = DerivedStructure(sl2_xi_eta, max_arity=4)
    assert transport_agreement(cone, derived, 1).ok
    assert transport_agreement(cone, derived, 2).ok
    exact = transport_agreement(cone, derived, 3)
    assert not exact.ok and exact.ratio == -1
    assert transport_agreement(cone, derived, 3, expected_ratio=-1).ok


def test_unsigned_transport_fails_at_arity_one(heisenberg, phi):
    cone = ConeStructure(phi)
    derived = DerivedStructure(heisenberg)
    r = transport_agreement(cone, derived, 1, transport_map=partial(transport, sign=1))
    assert not r.ok
    assert r.witness == ("p.xi",)
    assert r.discrepancy == "cone: (0, 2*p); transported: (0, 0)"


def test_transport_rejects_nonpositive(heisenberg):
    with pytest.raises(ValueError):
        transport(heisenberg, heisenberg.element("p"))


def test_dt_sign_is_forced(phi, monkeypatch):
    assert cone_mod.DT_SIGN == -1
    assert path_algebra_check(phi, 2) is None
    monkeypatch.setattr(cone_mod, "DT_SIGN", 1)
    failure = path_algebra_check(phi, 2)
    assert failure is not None


def test_constrained_bracket(phi, heisenberg):
    bad = PathElement.make(heisenberg.element("p"))
    with pytest.raises(ConstraintError):
        path_bracket(phi, bad, bad)
    good = include(phi, heisenberg.element("p"), Element.zero())
    assert path_bracket(phi, good, good) == PathElement.make(Element.zero())


def test_contraction_resolution(phi):
    survey = {(r.variant, r.inclusion): r.ok for r in contraction_survey(phi)}
    assert survey == {
        ("A", "endpoint"): True,
        ("A", "stated"): False,
        ("B", "endpoint"): False,
        ("B", "stated"): False,
    }
    stated = contraction_check(phi, "A", "stated")
    assert stated.checks["image"] is not None
    assert all(v is None for k, v in stated.checks.items() if k != "image")


def test_endpoint_inclusion_is_a_chain_map(phi, heisenberg):
    for s in heisenberg.basis():
        e = Element.basis(s)
        if s.degree <= 0:
            x = include(phi, e, Element.zero())
            assert path_differential(phi, x) == include(phi, heisenberg.differential(e), e)
        a = include(phi, Element.zero(), e)
        assert path_differential(phi, a) == include(phi, Element.zero(), heisenberg.differential(e) * -1)


def test_unknown_variant(phi):
    with pytest.raises(ValueError):
        contraction_check(phi, "C")
    with pytest.raises(ValueError):
        include(phi, Element.zero(), Element.zero(), "other")
