"""Mapping cone of tau_{<=0} L -> L: contraction variants and transport."""

from functools import partial

from higher_brackets.cone import (
    ConeStructure,
    DglaMorphism,
    contraction_survey,
    transport,
    transport_agreement,
)
from higher_brackets.derived import DerivedStructure
from higher_brackets.presets import load_preset


def main():
    g = load_preset("sl2_xi_eta")
    phi = DglaMorphism.inclusion(g)
    for report in contraction_survey(phi):
        status = "ok" if report.ok else "fails"
        print(f"h variant {report.variant}, inclusion {report.inclusion:8}: {status}")
        for name, value in sorted(report.as_dict()["checks"].items()):
            if value != "pass":
                print(f"    {name}: {value}")

    cone = ConeStructure(phi, max_arity=4)
    derived = DerivedStructure(g, max_arity=4)
    for sign in (-1, 1):
        print(f"\ntransport a -> (Da, {'-' if sign < 0 else ''}a)")
        for arity in (1, 2, 3):
            r = transport_agreement(cone, derived, arity, transport_map=partial(transport, sign=sign))
            line = "agrees" if r.ok else f"differs at {', '.join(r.witness)}: {r.discrepancy}"
            if r.ratio is not None:
                line += f" (factor {r.ratio})"
            print(f"  arity {arity}: {line}")


if __name__ == "__main__":
    main()
