"""Differential graded Lie algebras.

Grading is homological: the differential lowers degree by one and the
bracket is degree-additive. A :class:`Dgla` only has to know how to
differentiate and bracket basis symbols; linear extension is shared.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from .algebra import (
    BasisSymbol,
    Element,
    RationalParseError,
    bilinear_extension,
    format_rational,
    linear_extension,
    parse_rational,
    symbol_name,
)


class DglaError(Exception):
    pass


class DglaSchemaError(DglaError):
    pass


class UnknownSymbolError(DglaError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown symbol"


class BasisUnavailable(DglaError):
    """Raised by symbolic algebras that cannot enumerate a basis."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witnesses: tuple
    defect: str

    def as_dict(self):
        return {"axiom": self.axiom, "witnesses": list(self.witnesses), "defect": self.defect}


class DglaValidationError(DglaError):
    def __init__(self, violation: Violation):
        super().__init__(f"{violation.axiom} fails on {violation.witnesses}: {violation.defect}")
        self.violation = violation


class Dgla:
    """Base class: subclasses implement ``differential_of`` and ``bracket_of``."""

    name = "dgla"
    enumerable = True

    def basis(self) -> list:
        raise BasisUnavailable(f"{self.name} does not enumerate a basis")

    def basis_in_degree(self, d: int) -> list:
        return [s for s in self.basis() if s.degree == d]

    def degrees(self) -> list:
        return sorted({s.degree for s in self.basis()})

    def symbol(self, name: str) -> BasisSymbol:
        for s in self.basis():
            if symbol_name(s) == name:
                return s
        raise UnknownSymbolError(f"unknown basis symbol {name!r} in {self.name}")

    def element(self, name: str, coeff=1) -> Element:
        return Element.basis(self.symbol(name), coeff)

    def differential_of(self, sym: BasisSymbol) -> Element:
        raise NotImplementedError

    def bracket_of(self, s: BasisSymbol, t: BasisSymbol) -> Element:
        raise NotImplementedError

    def differential(self, e: Element) -> Element:
        return linear_extension(self.differential_of, e)

    def bracket(self, a: Element, b: Element) -> Element:
        return bilinear_extension(self.bracket_of, a, b)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class StructureConstantDgla(Dgla):
    """A finite DGLA given by sparse structure constants.

    ``bracket_table`` must be complete in both orientations; use
    :func:`complete_bracket_table` (or :func:`load_dgla`) to fill in the
    other orientation from graded antisymmetry.
    """

    def __init__(self, name: str, basis, diff_table=None, bracket_table=None):
        self.name = name
        self._basis = list(basis)
        self._by_name = {}
        for s in self._basis:
            key = symbol_name(s)
            if key in self._by_name:
                raise DglaSchemaError(f"duplicate basis id {key!r}")
            self._by_name[key] = s
        self.diff_table = {s: e for s, e in (diff_table or {}).items() if e}
        self.bracket_table = {k: e for k, e in (bracket_table or {}).items() if e}
        self._zero = Element.zero()

    def basis(self):
        return list(self._basis)

    def symbol(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbolError(f"unknown basis symbol {name!r} in {self.name}") from None

    def differential_of(self, sym):
        return self.diff_table.get(sym, self._zero)

    def bracket_of(self, s, t):
        return self.bracket_table.get((s, t), self._zero)


def complete_bracket_table(table: dict) -> dict:
    """Fill in ``[t, s] = -(-1)^{|s||t|} [s, t]``, rejecting contradictions."""
    full = dict(table)
    for (s, t), e in table.items():
        sign = -1 if (s.degree * t.degree) % 2 == 0 else 1
        mirrored = e * sign
        if (t, s) in full and full[(t, s)] != mirrored:
            raise DglaSchemaError(
                f"contradictory bracket entries for ({symbol_name(s)}, {symbol_name(t)})"
            )
        full[(t, s)] = mirrored
    return full


# validation


@dataclass
class ValidationReport:
    name: str
    ok: bool
    violation: Violation | None = None
    checked: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _as_elements(scope):
    out = []
    for x in scope:
        out.append(x if isinstance(x, Element) else Element.basis(x))
    return out


def _homogeneous_degree(e: Element):
    degs = e.degrees()
    return next(iter(degs)) if len(degs) == 1 else None


def validate(dgla: Dgla, scope=None, jacobi_triples: str = "all") -> ValidationReport:
    """Check the DGLA axioms exactly on every pair/triple drawn from ``scope``.

    ``scope`` is a list of homogeneous elements or basis symbols; it defaults
    to the full basis. ``jacobi_triples`` is ``"all"`` (ordered triples) or
    ``"sorted"`` (one ordering per multiset, valid once antisymmetry holds).
    """
    window = _as_elements(dgla.basis() if scope is None else scope)
    counts = {"symbols": len(window), "pairs": 0, "triples": 0}

    def fail(axiom, witnesses, defect):
        return ValidationReport(
            dgla.name, False, Violation(axiom, tuple(str(w) for w in witnesses), str(defect)), counts
        )

    degs = []
    for a in window:
        d = _homogeneous_degree(a)
        if d is None:
            return fail("homogeneity", (a,), "scope element is not homogeneous")
        degs.append(d)

    for a, da in zip(window, degs):
        delta = dgla.differential(a)
        if delta and delta.degrees() != {da - 1}:
            return fail("differential degree", (a,), delta)
        dd = dgla.differential(delta)
        if dd:
            return fail("d^2 = 0", (a,), dd)

    brackets = {}
    for i, (a, da) in enumerate(zip(window, degs)):
        for j, (b, db) in enumerate(zip(window, degs)):
            counts["pairs"] += 1
            ab = dgla.bracket(a, b)
            brackets[i, j] = ab
            if ab and ab.degrees() != {da + db}:
                return fail("degree additivity", (a, b), ab)
    for i, (a, da) in enumerate(zip(window, degs)):
        for j, (b, db) in enumerate(zip(window, degs)):
            sign = -1 if (da * db) % 2 else 1
            defect = brackets[i, j] + brackets[j, i] * sign
            if defect:
                return fail("graded antisymmetry", (a, b), defect)
    for i, (a, da) in enumerate(zip(window, degs)):
        for j, (b, db) in enumerate(zip(window, degs)):
            sign = -1 if da % 2 else 1
            defect = (
                dgla.differential(brackets[i, j])
                - dgla.bracket(dgla.differential(a), b)
                - dgla.bracket(a, dgla.differential(b)) * sign
            )
            if defect:
                return fail("graded Leibniz", (a, b), defect)

    n = len(window)
    if jacobi_triples == "all":
        triples = itertools.product(range(n), repeat=3)
    elif jacobi_triples == "sorted":
        triples = itertools.combinations_with_replacement(range(n), 3)
    else:
        raise ValueError(f"unknown jacobi_triples mode {jacobi_triples!r}")
    for i, j, k in triples:
        counts["triples"] += 1
        a, b, c = window[i], window[j], window[k]
        sign = -1 if (degs[i] * degs[j]) % 2 else 1
        defect = (
            dgla.bracket(a, brackets[j, k])
            - dgla.bracket(brackets[i, j], c)
            - dgla.bracket(b, brackets[i, k]) * sign
        )
        if defect:
            return fail("graded Jacobi", (a, b, c), defect)
    return ValidationReport(dgla.name, True, None, counts)


# documents


def _require(doc, key, kind):
    if key not in doc:
        raise DglaSchemaError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise DglaSchemaError(f"field {key!r} must be {kind.__name__}")
    return value


def _parse_terms(terms, symbols, where):
    if not isinstance(terms, list):
        raise DglaSchemaError(f"{where}: 'terms' must be a list")
    acc = {}
    for term in terms:
        if not isinstance(term, dict) or "to" not in term or "coeff" not in term:
            raise DglaSchemaError(f"{where}: each term needs 'to' and 'coeff'")
        target = str(term["to"])
        if target not in symbols:
            raise UnknownSymbolError(f"{where}: unknown symbol {target!r}")
        try:
            c = parse_rational(term["coeff"])
        except RationalParseError:
            raise
        sym = symbols[target]
        acc[sym] = acc.get(sym, 0) + c
    return Element(acc)


def load_dgla(document, validate_axioms: bool = True) -> StructureConstantDgla:
    """Build a :class:`StructureConstantDgla` from a document.

    ``document`` is a mapping or JSON/YAML text with fields ``name``,
    ``basis``, ``differential`` and ``bracket``. Missing table entries are
    zero; a bracket pair may be given in one orientation only.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as exc:
            raise DglaSchemaError(f"unreadable document: {exc}") from None
    if not isinstance(document, dict):
        raise DglaSchemaError("document must be a mapping")
    name = str(document.get("name", "unnamed"))
    basis_doc = _require(document, "basis", list)
    symbols = {}
    basis = []
    for entry in basis_doc:
        if not isinstance(entry, dict) or "id" not in entry or "degree" not in entry:
            raise DglaSchemaError("basis entries need 'id' and 'degree'")
        ident = str(entry["id"])
        degree = entry["degree"]
        if isinstance(degree, bool) or not isinstance(degree, int):
            raise DglaSchemaError(f"degree of {ident!r} must be an integer")
        if ident in symbols:
            raise DglaSchemaError(f"duplicate basis id {ident!r}")
        sym = BasisSymbol(ident, degree)
        symbols[ident] = sym
        basis.append(sym)

    diff_table = {}
    for entry in document.get("differential") or []:
        if not isinstance(entry, dict) or "from" not in entry:
            raise DglaSchemaError("differential entries need 'from' and 'terms'")
        src = str(entry["from"])
        if src not in symbols:
            raise UnknownSymbolError(f"differential: unknown symbol {src!r}")
        sym = symbols[src]
        if sym in diff_table:
            raise DglaSchemaError(f"duplicate differential entry for {src!r}")
        image = _parse_terms(entry.get("terms", []), symbols, f"differential of {src}")
        if image and image.degrees() != {sym.degree - 1}:
            raise DglaSchemaError(f"differential of {src!r} does not lower degree by one")
        diff_table[sym] = image

    given = {}
    for entry in document.get("bracket") or []:
        if not isinstance(entry, dict) or "left" not in entry or "right" not in entry:
            raise DglaSchemaError("bracket entries need 'left', 'right' and 'terms'")
        left, right = str(entry["left"]), str(entry["right"])
        for ident in (left, right):
            if ident not in symbols:
                raise UnknownSymbolError(f"bracket: unknown symbol {ident!r}")
        s, t = symbols[left], symbols[right]
        image = _parse_terms(entry.get("terms", []), symbols, f"bracket [{left}, {right}]")
        if image and image.degrees() != {s.degree + t.degree}:
            raise DglaSchemaError(f"bracket [{left}, {right}] is not degree-additive")
        if (s, t) in given and given[s, t] != image:
            raise DglaSchemaError(f"contradictory bracket entries for ({left}, {right})")
        given[s, t] = image
    table = complete_bracket_table(given)

    dgla = StructureConstantDgla(name, basis, diff_table, table)
    if validate_axioms:
        report = validate(dgla)
        if not report.ok:
            raise DglaValidationError(report.violation)
    return dgla


def load_dgla_file(path, validate_axioms: bool = True) -> StructureConstantDgla:
    text = Path(path).read_text()
    return load_dgla(text, validate_axioms=validate_axioms)


def _terms_doc(e: Element):
    return [{"to": symbol_name(s), "coeff": format_rational(c)} for s, c in e.sorted_items()]


def dump_dgla(dgla: StructureConstantDgla) -> dict:
    """Inverse of :func:`load_dgla`; each bracket pair appears once."""
    basis = dgla.basis()
    order = {s: i for i, s in enumerate(basis)}
    doc = {
        "name": dgla.name,
        "basis": [{"id": symbol_name(s), "degree": s.degree} for s in basis],
        "differential": [
            {"from": symbol_name(s), "terms": _terms_doc(dgla.differential_of(s))}
            for s in basis
            if dgla.differential_of(s)
        ],
        "bracket": [
            {"left": symbol_name(s), "right": symbol_name(t), "terms": _terms_doc(e)}
            for (s, t), e in sorted(dgla.bracket_table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))
            if order[s] <= order[t] and e
        ],
    }
    return doc


def dumps_dgla(dgla: StructureConstantDgla) -> str:
    return json.dumps(dump_dgla(dgla), indent=2) + "\n"


# truncation


class PositiveWindow:
    """The positive-degree part of a DGLA, as a view.

    The ambient algebra stays available for intermediate values (for
    instance images of the differential on degree one, which sit in
    degree zero).
    """

    def __init__(self, ambient: Dgla):
        self.ambient = ambient

    def admits(self, x) -> bool:
        if isinstance(x, BasisSymbol):
            return x.degree > 0
        return all(s.degree > 0 for s in x.symbols())

    def basis(self) -> list:
        return [s for s in self.ambient.basis() if s.degree > 0]

    def degrees(self) -> list:
        return sorted({s.degree for s in self.basis()})

    def __eq__(self, other):
        return isinstance(other, PositiveWindow) and other.ambient is self.ambient

    def __hash__(self):
        return hash(id(self.ambient))

    def __repr__(self):
        return f"PositiveWindow({self.ambient!r})"


def truncate_positive(d) -> PositiveWindow:
    if isinstance(d, PositiveWindow):
        return d
    return PositiveWindow(d)


# element expressions: "3/2*a - b + c"

_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([^\s+*-][^\s+*-]*)\s*")


def parse_element(text: str, dgla: Dgla) -> Element:
    """Parse ``coeff*id`` terms joined by ``+``/``-``.

    Coefficients are integers or ``p/q``; a bare number is not allowed
    since there is no unit element.
    """
    text = text.strip()
    if text == "0":
        return Element.zero()
    pos = 0
    acc = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse element expression {text!r} at offset {pos}")
        sign, coeff, name = m.groups()
        if not sign and not first:
            raise ValueError(f"missing '+' or '-' before {name!r} in {text!r}")
        c = parse_rational(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        sym = dgla.symbol(name)
        acc[sym] = acc.get(sym, 0) + c
        pos = m.end()
        first = False
    return Element(acc)
