import json
import math

from higher_brackets.presets import build_finite, load_preset
from higher_brackets.report import (
    RunConfig,
    Suite,
    contraction_resolution,
    dumps_report,
    format_text,
    multisets,
    ordered,
    run_verify,
    window_of,
)


def test_exhaustive_below_cap():
    tuples, note = multisets(range(5), 3, RunConfig())
    assert note is None and len(tuples) == math.comb(7, 3)


def test_sampling_above_cap_is_seeded():
    config = RunConfig(tuple_cap=10, samples=25, seed=3)
    first, note = multisets(range(8), 3, config, "x")
    again, _ = multisets(range(8), 3, config, "x")
    other, _ = multisets(range(8), 3, RunConfig(tuple_cap=10, samples=25, seed=4), "x")
    assert first == again != other
    assert "seed 3" in note and all(list(t) == sorted(t) for t in first)
    picked, note = ordered(range(8), 2, config, "y")
    assert len(picked) == 25 and "of 64" in note


def test_report_shape():
    suite = Suite(RunConfig())
    suite.check("b.second", lambda: (True, None, None))
    suite.check("a.first", lambda: (False, ["x"], "boom"))
    report = suite.report("subject")
    assert report["status"] == "fail"
    assert [r["check_id"] for r in report["records"]] == ["a.first", "b.second"]
    assert report["records"][0] == {"check_id": "a.first", "status": "fail", "witness": ["x"], "detail": "boom"}
    assert "output_format" not in report["config"]
    text = format_text(report, suite.records)
    assert "FAIL  a.first" in text and "witness: x" in text
    assert json.loads(dumps_report(report)) == report


def test_symbolic_window_and_poisson_checks():
    alg = load_preset("poisson_symplectic")
    assert len(window_of(alg)) == 6
    suite, report = run_verify(alg, RunConfig(max_arity=2))
    assert report["status"] == "pass"
    assert "poisson.derived_vs_classical" in [r["check_id"] for r in report["records"]]


def test_contraction_resolution():
    assert contraction_resolution(build_finite("heisenberg_xi")) == [("A", "endpoint")]
