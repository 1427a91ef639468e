"""The Bernoulli generating-function identities behind the even-n Jacobi rules."""

from higher_brackets.bernoulli import bracket_coefficient
from higher_brackets.derived import ideal_membership_check, strata_polynomial
from higher_brackets.series import f_series, symmetrized_identity_check


def main():
    print("b_n:", ", ".join(f"{bracket_coefficient(n)}" for n in range(9)))
    f = f_series(8)
    print("f(x) = x/(e^x - 1) + x/2:", [str(f[n].terms.get((0, 0), 0)) for n in range(9)])
    ok, bad, residual = symmetrized_identity_check(12)
    shown = {n: {k: str(c) for k, c in r.items()} for n, r in residual.items()}
    print(f"closed form through x^12: {'exact' if ok else bad}; residual at t = 1 - s: {shown}")
    print("\nJacobi sum as a polynomial in Z_{n,i,j}, tested for membership in (s + t - 1):")
    for n in range(2, 11):
        plus_delta = ideal_membership_check(strata_polynomial(n, 1))[0]
        flipped = ideal_membership_check(strata_polynomial(n, -1))[0]
        print(f"  n = {n:2}: unary +delta {'ok' if plus_delta else 'FAILS'}, unary -delta {'ok' if flipped else 'FAILS'}")


if __name__ == "__main__":
    main()
