"""The n = 2 Jacobi rule with {a} = +delta a, and with the sign flipped."""

from higher_brackets.derived import DerivedStructure, jacobi_term_decomposition, z_expression
from higher_brackets.linfinity import jacobi_defect
from higher_brackets.presets import load_preset


def main():
    g = load_preset("sl2_xi_eta")
    args = [g.element(n) for n in ("h.xi", "e.xi", "h.eta")]
    print("inputs:", ", ".join(map(str, args)))
    print("Z_{2,1,0} =", z_expression(g, 2, 1, 0, args))
    for convention in ("stated", "corrected"):
        st = DerivedStructure(g, convention=convention)
        print(f"\n{convention}: unary sign {st.unary_sign:+d}")
        for stratum in jacobi_term_decomposition(st, 2, args):
            print(f"  {stratum.label:6} {stratum.direct}  (via Z: {stratum.via_z})")
        print("  Jacobi n = 2 defect:", jacobi_defect(st, 2, args))


if __name__ == "__main__":
    main()
