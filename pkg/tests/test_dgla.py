import json
from fractions import Fraction
from pathlib import Path

import pytest

from higher_brackets.algebra import BasisSymbol, Element, RationalParseError
from higher_brackets.dgla import (
    DglaSchemaError,
    DglaValidationError,
    UnknownSymbolError,
    dump_dgla,
    dumps_dgla,
    load_dgla,
    load_dgla_file,
    parse_element,
    truncate_positive,
    validate,
)

FIXTURES = Path(__file__).parent / "fixtures"


def doc(**overrides):
    base = {
        "name": "t",
        "basis": [{"id": "a", "degree": 0}, {"id": "b", "degree": 1}, {"id": "c", "degree": 1}],
        "differential": [],
        "bracket": [{"left": "a", "right": "b", "terms": [{"to": "c", "coeff": "2"}]}],
    }
    base.update(overrides)
    return base


def test_load_fills_other_orientation():
    g = load_dgla(doc())
    a, b, c = (g.element(n) for n in "abc")
    assert g.bracket(a, b) == c * 2
    assert g.bracket(b, a) == c * -2


def test_yaml_document(tmp_path):
    g = load_dgla_file(FIXTURES / "small.yaml")
    assert g.name == "small_yaml"
    assert validate(g).ok


def test_roundtrip_is_exact():
    g = load_dgla(doc())
    again = load_dgla(dumps_dgla(g))
    assert dump_dgla(again) == dump_dgla(g)


def test_broken_fixture_reports_witness():
    g = load_dgla_file(FIXTURES / "broken_jacobi.json", validate_axioms=False)
    report = validate(g)
    assert not report.ok
    assert report.violation.axiom == "graded Jacobi"
    assert len(report.violation.witnesses) == 3
    with pytest.raises(DglaValidationError) as info:
        load_dgla_file(FIXTURES / "broken_jacobi.json")
    assert info.value.violation == report.violation


@pytest.mark.parametrize(
    "overrides, error",
    [
        ({"basis": "nope"}, DglaSchemaError),
        ({"basis": [{"id": "a"}]}, DglaSchemaError),
        ({"basis": [{"id": "a", "degree": 1.5}]}, DglaSchemaError),
        ({"basis": [{"id": "a", "degree": 0}, {"id": "a", "degree": 1}]}, DglaSchemaError),
        ({"differential": [{"from": "zz", "terms": []}]}, UnknownSymbolError),
        ({"differential": [{"from": "b", "terms": [{"to": "c", "coeff": "1"}]}]}, DglaSchemaError),
        ({"bracket": [{"left": "a", "right": "q", "terms": []}]}, UnknownSymbolError),
        ({"bracket": [{"left": "a", "right": "b", "terms": [{"to": "a", "coeff": "1"}]}]}, DglaSchemaError),
        ({"bracket": [{"left": "a", "right": "b", "terms": [{"to": "c", "coeff": "0.5"}]}]}, RationalParseError),
        ({"bracket": [{"left": "a", "right": "b", "terms": [{"to": "nope", "coeff": "1"}]}]}, UnknownSymbolError),
    ],
)
def test_schema_errors_are_distinct(overrides, error):
    with pytest.raises(error):
        load_dgla(doc(**overrides))


def test_contradictory_entries():
    bracket = [
        {"left": "a", "right": "b", "terms": [{"to": "c", "coeff": "1"}]},
        {"left": "a", "right": "b", "terms": [{"to": "c", "coeff": "2"}]},
    ]
    with pytest.raises(DglaSchemaError):
        load_dgla(doc(bracket=bracket))


def test_unreadable_text():
    with pytest.raises(DglaSchemaError):
        load_dgla("basis: [unclosed")
    with pytest.raises(DglaSchemaError):
        load_dgla("- just a list")


def test_validate_catches_d_squared():
    basis = [{"id": "x", "degree": 2}, {"id": "y", "degree": 1}, {"id": "z", "degree": 0}]
    diff = [
        {"from": "x", "terms": [{"to": "y", "coeff": "1"}]},
        {"from": "y", "terms": [{"to": "z", "coeff": "1"}]},
    ]
    g = load_dgla({"basis": basis, "differential": diff}, validate_axioms=False)
    report = validate(g)
    assert report.violation.axiom == "d^2 = 0"
    assert report.violation.witnesses == ("x",)


def test_validate_catches_leibniz():
    basis = [{"id": "p", "degree": 0}, {"id": "q", "degree": 1}, {"id": "u", "degree": 2}]
    diff = [{"from": "u", "terms": [{"to": "q", "coeff": "1"}]}]
    bracket = [{"left": "p", "right": "q", "terms": [{"to": "q", "coeff": "1"}]}]
    g = load_dgla({"basis": basis, "differential": diff, "bracket": bracket}, validate_axioms=False)
    assert validate(g).violation.axiom == "graded Leibniz"


def test_parse_element():
    g = load_dgla(doc())
    e = parse_element("2*b - 1/3*c + a", g)
    assert e.coefficient(g.symbol("b")) == 2
    assert e.coefficient(g.symbol("c")) == Fraction(-1, 3)
    assert parse_element("0", g) == 0
    assert parse_element("-b", g) == g.element("b") * -1


@pytest.mark.parametrize("bad, error", [("q", UnknownSymbolError), ("2*b c", ValueError), ("1/0*b", RationalParseError)])
def test_parse_element_errors(bad, error):
    with pytest.raises(error):
        parse_element(bad, load_dgla(doc()))


def test_positive_window():
    g = load_dgla(doc())
    w = truncate_positive(g)
    assert [s.id for s in w.basis()] == ["b", "c"]
    assert w.admits(BasisSymbol("b", 1)) and not w.admits(g.element("a"))
    assert truncate_positive(w) is w


def test_validate_scope_rejects_inhomogeneous():
    g = load_dgla(doc())
    report = validate(g, [g.element("a") + g.element("b")])
    assert report.violation.axiom == "homogeneity"


def test_dump_is_json_serializable():
    g = load_dgla(doc())
    assert json.loads(dumps_dgla(g)) == dump_dgla(g)
