"""Verification suites and the report format shared by the CLI and the tests.

A report is a plain dict:

    {"tool_version": ..., "config": {...}, "records": [...], "status": "pass" | "fail"}

Each record has ``check_id``, ``status`` and, when something failed or was
sampled, ``witness`` / ``detail``. Records are sorted by ``check_id`` and
serialized with sorted keys, so a fixed config yields identical bytes.
Wall-clock timings are only shown in text output.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

from . import __version__
from .algebra import Element, symbol_name
from .bernoulli import bernoulli, bracket_coefficient
from .cone import (
    ConeStructure,
    DglaMorphism,
    cone_jacobi_check,
    cone_symbol_name,
    contraction_survey,
    path_algebra_check,
    transport,
    transport_agreement,
)
from .derived import (
    DerivedStructure,
    ideal_membership_check,
    explicit_binary,
    explicit_ternary,
    jacobi_term_decomposition,
    strata_polynomial,
    z_expression,
)
from .dgla import Dgla, validate
from .linfinity import check_symmetry, is_lie_n, jacobi_defect
from .series import (
    BivarPoly,
    bernoulli_from_series,
    even_n_congruence_check,
    f_series,
    odd_n_polynomial,
    symmetrized_identity_check,
)

DEFAULT_TUPLE_CAP = 200_000
# homotopy variant and inclusion of the cone into the path algebra
CONTRACTION = ("A", "endpoint")
# the one documented transport discrepancy: (arity, global sign)
ARITY3_SIGN = (3, -1)


@dataclass
class RunConfig:
    max_arity: int = 4
    series_order: int = 12
    seed: int = 0
    samples: int = 2000
    tuple_cap: int = DEFAULT_TUPLE_CAP
    output_format: str = "text"
    convention: str = "stated"
    cone: bool = False
    series: bool = False

    def echo(self):
        out = asdict(self)
        out.pop("output_format")
        return out


@dataclass
class Record:
    check_id: str
    ok: bool
    witness: list | None = None
    detail: str | None = None
    seconds: float = field(default=0.0, compare=False)

    def as_dict(self):
        out = {"check_id": self.check_id, "status": "pass" if self.ok else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


class Suite:
    """Collects records; each ``check`` call is timed."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.records: list[Record] = []

    def check(self, check_id, fn):
        start = time.perf_counter()
        ok, witness, detail = fn()
        rec = Record(check_id, ok, witness, detail, time.perf_counter() - start)
        self.records.append(rec)
        return rec

    @property
    def ok(self):
        return all(r.ok for r in self.records)

    def report(self, subject: str):
        return {
            "tool_version": __version__,
            "subject": subject,
            "config": self.config.echo(),
            "records": [r.as_dict() for r in sorted(self.records, key=lambda r: r.check_id)],
            "status": "pass" if self.ok else "fail",
        }


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def format_text(report: dict, records=None) -> str:
    timing = {r.check_id: r.seconds for r in records or []}
    lines = [f"{report['subject']}: {report['status'].upper()}"]
    for rec in report["records"]:
        line = f"  {rec['status'].upper():4}  {rec['check_id']}"
        if rec["check_id"] in timing:
            line += f"  ({timing[rec['check_id']]:.2f}s)"
        lines.append(line)
        if "detail" in rec:
            lines.append(f"        detail: {rec['detail']}")
        if "witness" in rec:
            lines.append(f"        witness: {', '.join(map(str, rec['witness']))}")
    return "\n".join(lines) + "\n"


# tuple sweeps


def multisets(window, size: int, config: RunConfig, salt: str = ""):
    """Multisets of ``size`` window symbols: all of them below the cap, else a seeded sample.

    Returns ``(tuples, note)``; ``note`` is None in exhaustive mode.
    """
    window = list(window)
    count = math.comb(len(window) + size - 1, size) if window else 0
    if count <= config.tuple_cap:
        return list(itertools.combinations_with_replacement(window, size)), None
    rng = random.Random(f"{config.seed}:{salt}:{size}")
    picked = sorted(
        {tuple(sorted(rng.choices(range(len(window)), k=size))) for _ in range(config.samples)}
    )
    note = f"sampled {len(picked)} of {count} tuples with seed {config.seed}"
    return [tuple(window[i] for i in p) for p in picked], note


def ordered(window, size: int, config: RunConfig, salt: str = ""):
    window = list(window)
    count = len(window) ** size
    if count <= config.tuple_cap:
        return list(itertools.product(window, repeat=size)), None
    rng = random.Random(f"{config.seed}:{salt}:ordered:{size}")
    picked = [tuple(rng.choices(window, k=size)) for _ in range(config.samples)]
    return picked, f"sampled {len(picked)} of {count} tuples with seed {config.seed}"


def _names(symbols):
    return [symbol_name(s) for s in symbols]


def _elements(symbols):
    return [Element.basis(s) for s in symbols]


def _first_failure(tuples, predicate, note=None, namer=_names):
    """``predicate(tuple)`` returns a defect (falsy when fine)."""
    for tup in tuples:
        defect = predicate(tup)
        if defect:
            return False, namer(tup), str(defect)
    return True, None, note


# derived-bracket suite


def window_of(dgla: Dgla, max_poly_degree: int = 2):
    """Positive-degree inputs: the basis when finite, else function monomials."""
    if getattr(dgla, "enumerable", True):
        return [s for s in dgla.basis() if s.degree > 0]
    return dgla.function_window(max_poly_degree)


def validation_scope(dgla: Dgla):
    if getattr(dgla, "enumerable", True):
        return None
    return dgla.monomial_window(2, 2)


def derived_suite(suite: Suite, dgla: Dgla, prefix: str = ""):
    config = suite.config
    max_n = config.max_arity
    scope = validation_scope(dgla)

    def validation():
        rep = validate(dgla, scope, jacobi_triples="all" if scope is None else "sorted")
        if rep.ok:
            return True, None, None
        v = rep.violation
        return False, list(v.witnesses), f"{v.axiom}: {v.defect}"

    suite.check(f"{prefix}dgla.validate", validation)

    structure = DerivedStructure(dgla, max_arity=max_n + 1, convention=config.convention)
    window = window_of(dgla)

    for arity in (2, 3):
        if arity > max_n + 1:
            break
        tuples, note = ordered(window, arity, config, f"sym{arity}")

        def sym(tuples=tuples, note=note):
            def pred(tup):
                r = check_symmetry(structure, _elements(tup))
                return None if r.ok else f"swap at {r.position}: {r.defect}"

            return _first_failure(tuples, pred, note)

        suite.check(f"{prefix}symmetry.arity{arity}", sym)

    for n in range(max_n + 1):
        tuples, note = multisets(window, n + 1, config, f"jacobi{n}")

        def jac(n=n, tuples=tuples, note=note):
            return _first_failure(tuples, lambda tup: jacobi_defect(structure, n, _elements(tup)), note)

        suite.check(f"{prefix}jacobi.n{n}", jac)

    tuples, note = ordered(window, 2, config, "explicit2")
    suite.check(
        f"{prefix}explicit.binary",
        lambda: _first_failure(
            tuples,
            lambda tup: structure.evaluate(_elements(tup)) - explicit_binary(dgla, *_elements(tup)),
            note,
        ),
    )
    if max_n >= 2:
        tuples3, note3 = ordered(window, 3, config, "explicit3")
        suite.check(
            f"{prefix}explicit.ternary",
            lambda: _first_failure(
                tuples3,
                lambda tup: structure.evaluate(_elements(tup)) - explicit_ternary(dgla, *_elements(tup)),
                note3,
            ),
        )

    symbolic = not getattr(dgla, "enumerable", True)
    for n in range(2, min(max_n, 4) + 1):
        # the n = 4 decomposition on polynomial multivectors is slow; use linear functions
        zwindow = window_of(dgla, 1) if symbolic and n >= 4 else window
        tuples, note = multisets(zwindow, n + 1, config, f"z{n}")

        def z_rules(n=n, tuples=tuples, note=note):
            def pred(tup):
                args = _elements(tup)
                Z = {}
                for j in range(n):
                    for k in range(n - j):
                        Z[j, k] = z_expression(dgla, n, j, k, args)
                for (j, k), v in Z.items():
                    if v != Z[k, j]:
                        return f"Z[{n},{j},{k}] != Z[{n},{k},{j}]"
                    if j + k + 1 < n and v != Z[j + 1, k] + Z[j, k + 1]:
                        return f"recurrence fails at ({n},{j},{k})"
                return None

            return _first_failure(tuples, pred, note)

        suite.check(f"{prefix}z_identities.n{n}", z_rules)

        def strata(n=n, tuples=tuples, note=note):
            def pred(tup):
                for st in jacobi_term_decomposition(structure, n, _elements(tup)):
                    if not st.ok:
                        return f"stratum {st.label}: direct {st.direct}, via Z {st.via_z}"
                return None

            return _first_failure(tuples, pred, note)

        suite.check(f"{prefix}strata.n{n}", strata)

    top = max((s.degree for s in window), default=0)
    if window and top + 2 <= max_n + 1:

        def lie():
            r = is_lie_n(structure, top, window)
            return r.ok, list(r.witnesses) or None, r.reason or None

        suite.check(f"{prefix}lie_n.n{top}", lie)
    return structure


def poisson_suite(suite: Suite, dgla, prefix: str = ""):
    """Derived 2-bracket against ``[delta_P f, g]`` on function monomials."""
    from .presets.schouten import poisson_bracket_derived

    window = dgla.function_window(2)

    def compare():
        for s, t in itertools.product(window, repeat=2):
            f, g = Element.basis(s), Element.basis(t)
            derived, classical = poisson_bracket_derived(dgla, f, g)
            if derived != classical:
                return False, _names((s, t)), f"derived {derived} != classical {classical}"
            other, _ = poisson_bracket_derived(dgla, g, f)
            if derived != -other:
                return False, _names((s, t)), "not antisymmetric"
        return True, None, None

    suite.check(f"{prefix}poisson.derived_vs_classical", compare)


# cone suite


def cone_suite(suite: Suite, dgla: Dgla, prefix: str = ""):
    config = suite.config
    phi = DglaMorphism.inclusion(dgla)

    def morphism():
        failure = phi.check()
        return failure is None, list(failure[1]) if failure else None, failure[0] if failure else None

    suite.check(f"{prefix}cone.morphism", morphism)
    cone = ConeStructure(phi, max_arity=4)

    def jac():
        failure = cone_jacobi_check(cone, 3)
        if failure is None:
            return True, None, None
        n, combo, defect = failure
        return False, [cone_symbol_name(s) for s in combo], f"n={n}: {defect}"

    suite.check(f"{prefix}cone.jacobi", jac)

    def path():
        failure = path_algebra_check(phi, 2)
        return failure is None, list(failure[1]) if failure else None, failure[0] if failure else None

    suite.check(f"{prefix}cone.path_algebra", path)

    def contraction():
        survey = {(r.variant, r.inclusion): r for r in contraction_survey(phi, 3)}
        chosen = survey[CONTRACTION]
        others = ", ".join(
            f"{v}/{i}: {'pass' if r.ok else 'fail'}" for (v, i), r in sorted(survey.items()) if (v, i) != CONTRACTION
        )
        detail = f"{CONTRACTION[0]}/{CONTRACTION[1]}: " + json.dumps(chosen.as_dict()["checks"], sort_keys=True)
        return chosen.ok, None, f"{detail}; {others}"

    suite.check(f"{prefix}cone.contraction", contraction)
    derived = DerivedStructure(dgla, max_arity=4, convention=config.convention)
    for arity in (1, 2, 3):
        def agree(arity=arity):
            r = transport_agreement(cone, derived, arity)
            if r.ok:
                return True, None, None
            if arity == ARITY3_SIGN[0] and transport_agreement(cone, derived, arity, expected_ratio=ARITY3_SIGN[1]).ok:
                return True, None, f"agrees up to the global sign {ARITY3_SIGN[1]} on every tuple"
            detail = r.discrepancy
            if r.ratio is not None:
                detail = f"{detail}; off by a factor {r.ratio}"
            return False, list(r.witness), detail

        suite.check(f"{prefix}cone.transport.arity{arity}", agree)

    def literal():
        r = transport_agreement(cone, derived, 1, transport_map=partial(transport, sign=1))
        if r.ok:
            return True, None, "a -> (Da, a) also agrees at arity 1"
        return True, list(r.witness), f"a -> (Da, a) disagrees at arity 1 (expected): {r.discrepancy}"

    suite.check(f"{prefix}cone.transport.unsigned", literal)


def contraction_resolution(dgla: Dgla):
    """The (variant, inclusion) pairs passing all four contraction properties."""
    phi = DglaMorphism.inclusion(dgla)
    return [(r.variant, r.inclusion) for r in contraction_survey(phi, 3) if r.ok]


# series suite


def series_suite(suite: Suite, prefix: str = ""):
    order = suite.config.series_order

    def coefficients():
        if bracket_coefficient(1) != Fraction(1, 2) or bracket_coefficient(2) != Fraction(1, 12):
            return False, None, f"b1 = {bracket_coefficient(1)}, b2 = {bracket_coefficient(2)}"
        odd = [n for n in range(3, 16, 2) if bernoulli(n)]
        if odd:
            return False, odd, "odd Bernoulli numbers must vanish"
        from_series = bernoulli_from_series(15)
        bad = [n for n in range(16) if from_series[n] != bernoulli(n)]
        return not bad, bad or None, None

    suite.check(f"{prefix}series.bernoulli", coefficients)

    def f_coeffs():
        f = f_series(order)
        expected = lambda n: 0 if n == 1 else bernoulli(n) / math.factorial(n)
        bad = [n for n in range(order + 1) if f[n] != BivarPoly.const(expected(n))]
        return not bad, bad or None, None

    suite.check(f"{prefix}series.f", f_coeffs)

    def identity():
        ok, bad, residual = symmetrized_identity_check(order)
        expected = {2: {1: Fraction(1, 4), 2: Fraction(-1, 4)}}
        if not ok:
            return False, bad, "direct and closed forms differ"
        if residual != expected:
            return False, None, f"residual after t = 1 - s is {residual}"
        return True, None, None

    suite.check(f"{prefix}series.closed_form", identity)

    def odd():
        bad = [n for n in (3, 5, 7) if not ideal_membership_check(odd_n_polynomial(n))[0]]
        return not bad, bad or None, None

    suite.check(f"{prefix}series.odd_n", odd)

    def even():
        bad = [n for n in (4, 6, 8, 10) if even_n_congruence_check(n) != (True, True)]
        return not bad, bad or None, None

    suite.check(f"{prefix}series.even_n", even)

    def strata_sign():
        sign = -1 if suite.config.convention == "corrected" else 1
        bad = [n for n in range(2, 11) if not ideal_membership_check(strata_polynomial(n, sign))[0]]
        detail = None
        if bad:
            detail = "the Jacobi sum built from the strata fails the criterion at these n"
        return not bad, bad or None, detail

    suite.check(f"{prefix}series.strata_polynomial", strata_sign)


def run_verify(dgla: Dgla, config: RunConfig, subject: str | None = None):
    suite = Suite(config)
    derived_suite(suite, dgla)
    if not getattr(dgla, "enumerable", True) and hasattr(dgla, "function_window"):
        poisson_suite(suite, dgla)
    if config.cone:
        cone_suite(suite, dgla)
    if config.series:
        series_suite(suite)
    return suite, suite.report(subject or dgla.name)


def run_cone(dgla: Dgla, config: RunConfig, subject: str | None = None):
    suite = Suite(config)
    cone_suite(suite, dgla)
    return suite, suite.report(subject or dgla.name)


def run_series(config: RunConfig):
    suite = Suite(config)
    series_suite(suite)
    return suite, suite.report("series")
