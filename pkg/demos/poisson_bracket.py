"""Poisson brackets as derived 2-brackets in the Schouten algebra."""

from higher_brackets.derived import DerivedStructure
from higher_brackets.presets.schouten import lie_poisson_sl2, poisson_bracket_derived, symplectic_plane


def main():
    plane = symplectic_plane()
    print(f"P = {plane.poisson}")
    print(f"delta_P x1 = {plane.differential(plane.x(1))}")
    derived, classical = poisson_bracket_derived(plane, plane.x(1), plane.x(2))
    print(f"{{x1, x2}}: derived {derived}, classical {classical}")

    sl2 = lie_poisson_sl2()
    print(f"\nP = {sl2.poisson}  ([P, P] = {sl2.bracket(sl2.poisson, sl2.poisson)})")
    st = DerivedStructure(sl2)
    xs = [sl2.x(i) for i in (1, 2, 3)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        print(f"{{{xs[i]}, {xs[j]}}} = {st(xs[i], xs[j])}")


if __name__ == "__main__":
    main()
