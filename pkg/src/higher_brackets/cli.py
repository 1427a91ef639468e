"""Command-line interface.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
bad input (missing file, malformed document, unknown symbol, ...).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from . import __version__
from .algebra import RationalParseError
from .cone import split, transport
from .derived import CONVENTIONS, DerivedStructure, WindowError
from .dgla import DglaError, load_dgla, parse_element, validate
from .linfinity import ArityError
from .presets import UnknownPreset, describe, document_text, load_preset, names
from .report import (
    DEFAULT_TUPLE_CAP,
    RunConfig,
    dumps_report,
    format_text,
    run_cone,
    run_series,
    run_verify,
    validation_scope,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (
    DglaError,
    RationalParseError,
    UnknownPreset,
    WindowError,
    ArityError,
    OSError,
    yaml.YAMLError,
    ValueError,
)


class InputError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higher-brackets", description="Higher derived brackets with exact verification."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", nargs="?", help="DGLA document (YAML or JSON)")
    common.add_argument("--preset", help="use a named preset instead of a file")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    common.add_argument("--max-arity", type=_positive, default=4,
                        help="check the Jacobi rules for n = 0..N (brackets up to arity N+1)")
    common.add_argument("--order", type=_positive, default=12, help="series truncation order")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    common.add_argument("--samples", type=_positive, default=2000,
                        help="tuples drawn when a sweep exceeds the cap")
    common.add_argument("--tuple-cap", type=_positive, default=DEFAULT_TUPLE_CAP,
                        help="largest sweep run exhaustively")
    common.add_argument("--convention", choices=sorted(CONVENTIONS), default="stated",
                        help="sign of the unary bracket: 'stated' is +delta, 'corrected' is -delta")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the DGLA axioms")
    verify = sub.add_parser("verify", parents=[common], help="run the derived-bracket suite")
    verify.add_argument("--cone", action="store_true", help="include the mapping-cone suite")
    verify.add_argument("--series", action="store_true", help="include the series suite")
    bracket = sub.add_parser("bracket", parents=[common], help="evaluate one derived bracket")
    bracket.add_argument("--arg", "-a", action="append", required=True, dest="args",
                         help="an element such as '2*x - 1/3*y'; repeat for each slot")
    bracket.add_argument("--transport", action="store_true",
                         help="also print the image in the mapping cone")
    sub.add_parser("cone-verify", parents=[common], help="run the mapping-cone suite")
    sub.add_parser("series-verify", parents=[common], help="run the generating-function suite")
    example = sub.add_parser("example", help="list or print presets")
    example_sub = example.add_subparsers(dest="action", required=True)
    example_sub.add_parser("list", help="list preset names")
    emit = example_sub.add_parser("emit", help="print a finite preset as a DGLA document")
    emit.add_argument("name")
    return parser


def _config(ns) -> RunConfig:
    return RunConfig(
        max_arity=ns.max_arity,
        series_order=ns.order,
        seed=ns.seed,
        samples=ns.samples,
        tuple_cap=ns.tuple_cap,
        output_format=ns.output_format,
        convention=ns.convention,
        cone=getattr(ns, "cone", False),
        series=getattr(ns, "series", False),
    )


def _load(ns, validate_axioms=True):
    if ns.preset and ns.path:
        raise InputError("give either a path or --preset, not both")
    if ns.preset:
        return load_preset(ns.preset), ns.preset
    if not ns.path:
        raise InputError("a DGLA document path or --preset is required")
    text = Path(ns.path).read_text()
    return load_dgla(text, validate_axioms=validate_axioms), ns.path


def _emit(ns, suite, report, out):
    if ns.output_format == "json":
        out.write(dumps_report(report))
    else:
        out.write(format_text(report, suite.records))
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_validate(ns, out):
    dgla, subject = _load(ns, validate_axioms=False)
    scope = validation_scope(dgla)
    rep = validate(dgla, scope, jacobi_triples="all" if scope is None else "sorted")
    if ns.output_format == "json":
        doc = {"subject": subject, "status": "pass" if rep.ok else "fail", "checked": rep.checked}
        if rep.violation:
            doc["violation"] = rep.violation.as_dict()
        out.write(dumps_report(doc))
    else:
        if rep.ok:
            out.write(f"{subject}: PASS ({rep.checked['pairs']} pairs, {rep.checked['triples']} triples)\n")
        else:
            v = rep.violation
            out.write(f"{subject}: FAIL {v.axiom}\n  witness: {', '.join(v.witnesses)}\n  defect: {v.defect}\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(ns, out):
    dgla, subject = _load(ns)
    suite, report = run_verify(dgla, _config(ns), subject)
    return _emit(ns, suite, report, out)


def cmd_cone(ns, out):
    dgla, subject = _load(ns)
    if not getattr(dgla, "enumerable", True):
        raise InputError("the cone suite needs a finite algebra")
    suite, report = run_cone(dgla, _config(ns), subject)
    return _emit(ns, suite, report, out)


def cmd_series(ns, out):
    suite, report = run_series(_config(ns))
    return _emit(ns, suite, report, out)


def cmd_bracket(ns, out):
    dgla, _ = _load(ns)
    args = [parse_element(text, dgla) for text in ns.args]
    structure = DerivedStructure(dgla, max_arity=max(len(args), 1), convention=ns.convention)
    value = structure.evaluate(args)
    out.write(f"{value}\n")
    if ns.transport:
        k, l = split(transport(dgla, value))
        out.write(f"cone: ({k}, {l})\n")
    return EXIT_OK


def cmd_example(ns, out):
    if ns.action == "list":
        for name in names():
            out.write(f"{name:20} {describe(name)}\n")
        return EXIT_OK
    out.write(document_text(ns.name))
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "verify": cmd_verify,
    "bracket": cmd_bracket,
    "cone-verify": cmd_cone,
    "series-verify": cmd_series,
    "example": cmd_example,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[ns.command](ns, out)
    except (InputError, *INPUT_ERRORS) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
