"""Higher derived brackets on the positive truncation of a DGLA.

For ``n > 0`` the ``(n+1)``-ary bracket is

    b_n * sum over permutations pi of  eps(pi) [[...[D a_pi0, a_pi1], ...], a_pin]

where ``D`` is the differential on degree one and zero elsewhere,
``b_n = (-1)^n B_n / n!`` and ``eps`` is the Koszul sign. The unary
bracket is the differential, except that it vanishes on degree one.

With these signs the Jacobi rule fails at n = 2 as soon as the quantity
``Z_{2,1,0}`` below is nonzero: the n = 2 sum is ``(3 b_2 + b_1^2) Z_{2,1,0}``,
which is ``Z_{2,1,0} / 2``. Negating the unary bracket (equivalently, every
bracket of arity >= 2) makes all Jacobi rules hold. ``CONVENTIONS`` names
both choices; ``"stated"`` is the formula with +delta above.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, accumulate, koszul_sign, unshuffles
from .bernoulli import BernoulliCache, bracket_coefficient
from .dgla import Dgla, PositiveWindow, truncate_positive
from .linfinity import DEFAULT_MAX_ARITY, LInfinity
from .series import polynomial_residual


class WindowError(ValueError):
    """An input outside the positive-degree truncation."""


def d_operator(dgla: Dgla, a: Element) -> Element:
    """The differential applied to the degree-one part of ``a``."""
    return dgla.differential(a.homogeneous_component(1))


def _parity_sum(degrees) -> int:
    return sum(degrees) & 1


def symmetrized_nested(dgla: Dgla, args, prune: bool = True) -> Element:
    """Sum over orderings of ``eps [[...[D a_p0, a_p1], ...], a_pn]``.

    Orderings are built one slot at a time so that common prefixes share
    their nested brackets. With ``prune`` only degree-one arguments are
    tried in the first slot; the others contribute zero because ``D``
    kills them.
    """
    args = list(args)
    degs = [a.degree for a in args]
    acc: dict = {}

    def extend(value, remaining, sign):
        if not value:
            return
        if not remaining:
            accumulate(acc, value, sign)
            return
        before = 0
        for pos, i in enumerate(remaining):
            s = -sign if (degs[i] & before & 1) else sign
            extend(dgla.bracket(value, args[i]), remaining[:pos] + remaining[pos + 1 :], s)
            before += degs[i]

    idx = list(range(len(args)))
    before = 0
    for pos, i in enumerate(idx):
        s = -1 if (degs[i] & before & 1) else 1
        before += degs[i]
        if prune and degs[i] != 1:
            continue
        extend(d_operator(dgla, args[i]), idx[:pos] + idx[pos + 1 :], s)
    return Element._wrap(acc)


# sign of the unary bracket on degrees > 1
CONVENTIONS = {"stated": 1, "corrected": -1}


class DerivedStructure(LInfinity):
    """The L-infinity structure on the positive truncation of ``ambient``.

    ``convention`` selects the sign of the unary bracket, see
    :data:`CONVENTIONS`.
    """

    degree_floor = 1

    def __init__(self, ambient: Dgla, max_arity: int = DEFAULT_MAX_ARITY, prune: bool = True,
                 convention: str = "stated"):
        super().__init__(max_arity)
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}; expected one of {sorted(CONVENTIONS)}")
        self.convention = convention
        self.unary_sign = CONVENTIONS[convention]
        self.ambient = ambient
        self.window: PositiveWindow = truncate_positive(ambient)
        self.bernoulli = BernoulliCache()
        self.prune = prune

    def bracket_of_symbols(self, symbols):
        for s in symbols:
            if s.degree <= 0:
                raise WindowError(f"{s} has degree {s.degree}; inputs must have positive degree")
        args = [Element.basis(s) for s in symbols]
        n = len(args) - 1
        if n == 0:
            if symbols[0].degree == 1:
                return Element.zero()
            return self.ambient.differential(args[0]) * self.unary_sign
        coeff = self.bernoulli.b(n)
        if not coeff:
            return Element.zero()
        return symmetrized_nested(self.ambient, args, self.prune) * coeff


def derived_bracket(structure: DerivedStructure, args) -> Element:
    return structure.evaluate(args)


# the low-arity formulas written out by hand


def _sgn(e: int) -> int:
    return -1 if e & 1 else 1


def explicit_binary(dgla: Dgla, a0: Element, a1: Element) -> Element:
    """``(1/2)([D a0, a1] - (-1)^{|a0|} [a0, D a1])`` for homogeneous inputs."""
    D = lambda a: d_operator(dgla, a)
    br = dgla.bracket
    return (br(D(a0), a1) - br(a0, D(a1)) * _sgn(a0.degree)) * Fraction(1, 2)


def explicit_ternary(dgla: Dgla, a0: Element, a1: Element, a2: Element, literal: bool = False) -> Element:
    """The six-term formula for the ternary bracket.

    The second term carries ``(-1)^{|a0|}``. With ``literal=True`` it
    carries ``(-1)^{|a1|}`` instead;
    that version disagrees with the general formula when ``|a0|`` is even
    and ``|a1| = 1``.
    """
    D = lambda a: d_operator(dgla, a)
    br = dgla.bracket
    p0, p1, p2 = a0.degree, a1.degree, a2.degree
    second = p1 if literal else p0
    total = (
        br(br(D(a0), a1), a2)
        - br(br(a0, D(a1)), a2) * _sgn(second)
        + br(br(D(a1), a2), a0) * _sgn(p0 * (p1 + p2))
        - br(br(a1, D(a2)), a0) * _sgn(p0 * (p1 + p2) + p1)
        + br(br(D(a2), a0), a1) * _sgn((p0 + p1) * p2)
        - br(br(a2, D(a0)), a1) * _sgn((p0 + p1) * p2 + p2)
    )
    return total * Fraction(1, 12)


# Z expressions


def _left_nest(dgla: Dgla, value: Element, args) -> Element:
    for a in args:
        if not value:
            break
        value = dgla.bracket(value, a)
    return value


def z_expression(dgla: Dgla, n: int, j: int, k: int, args) -> Element:
    """Sum over pi of ``(-1)^{eps + |a_pi1| + ... + |a_pij|} [[inner1, inner2], ...]``.

    ``inner1 = [...[D a_pi0, a_pi1], ..., a_pij]`` and
    ``inner2 = [...[D a_pi(j+1), a_pi(j+2)], ..., a_pi(j+k+1)]``; the result
    is bracketed on the right with the remaining arguments in order.
    """
    args = list(args)
    if len(args) != n + 1:
        raise ValueError(f"Z_{{{n},{j},{k}}} takes {n + 1} arguments")
    if j < 0 or k < 0 or j + k >= n:
        raise ValueError(f"need j, k >= 0 and j + k < n; got n={n}, j={j}, k={k}")
    degs = [a.degree for a in args]
    acc: dict = {}
    for perm in itertools.permutations(range(n + 1)):
        first, second = perm[0], perm[j + 1]
        if degs[first] != 1 or degs[second] != 1:
            continue
        inner1 = _left_nest(dgla, d_operator(dgla, args[first]), [args[p] for p in perm[1 : j + 1]])
        if not inner1:
            continue
        inner2 = _left_nest(
            dgla, d_operator(dgla, args[second]), [args[p] for p in perm[j + 2 : j + k + 2]]
        )
        if not inner2:
            continue
        value = _left_nest(dgla, dgla.bracket(inner1, inner2), [args[p] for p in perm[j + k + 2 :]])
        if not value:
            continue
        sign = koszul_sign(perm, degs) * _sgn(sum(degs[p] for p in perm[1 : j + 1]))
        accumulate(acc, value, sign)
    return Element._wrap(acc)


def ideal_membership_check(coeffs: dict):
    """Decide whether ``f(s,t) + f(t,s)`` lies in the ideal ``(s + t - 1)``.

    ``coeffs`` maps ``(i, j)`` to the coefficient of ``s^i t^j``. Returns
    ``(ok, residual)`` where ``residual`` is the symmetrization after
    substituting ``t = 1 - s``, as a dict from powers of ``s``.
    """
    sym = {}
    for (i, j), c in coeffs.items():
        c = Fraction(c)
        sym[(i, j)] = sym.get((i, j), 0) + c
        sym[(j, i)] = sym.get((j, i), 0) + c
    residual = polynomial_residual(sym)
    return not residual, residual


# strata of the Jacobi sum


@dataclass
class Stratum:
    label: str
    direct: Element
    via_z: Element

    @property
    def ok(self):
        return self.direct == self.via_z


def _stratum_direct(structure: DerivedStructure, n: int, args, ks) -> Element:
    degs = [a.degree for a in args]
    acc: dict = {}
    for k in ks:
        for inner_idx, outer_idx, perm in unshuffles(n, k):
            inner = structure.evaluate([args[i] for i in inner_idx])
            if not inner:
                continue
            outer = structure.evaluate([inner] + [args[j] for j in outer_idx])
            accumulate(acc, outer, koszul_sign(perm, degs))
    return Element._wrap(acc)


def jacobi_term_decomposition(structure: DerivedStructure, n: int, args) -> list:
    """Split the n-th Jacobi sum by inner arity and compare with Z-combinations.

    Returns a list of :class:`Stratum`: ``k in {0, n}`` together, ``k = 1``,
    then each ``1 < k < n`` on its own (``k = n - 1`` included). The first
    stratum is linear in the unary bracket and so carries its sign.
    """
    args = list(args)
    if n < 2:
        raise ValueError("the decomposition is stated for n >= 2")
    dgla = structure.ambient
    b = bracket_coefficient
    Z = lambda j, k: z_expression(dgla, n, j, k, args)
    strata = []

    direct = _stratum_direct(structure, n, args, (0, n))
    via = Element.sum(Z(i, 0) for i in range(n)) * (b(n) * structure.unary_sign)
    strata.append(Stratum("k=0,n", direct, via))

    direct = _stratum_direct(structure, n, args, (1,))
    via = (Z(0, 0) - Element.sum(Z(i, 1) for i in range(n - 1))) * (b(1) * b(n - 1))
    strata.append(Stratum("k=1", direct, via))

    for k in range(2, n):
        direct = _stratum_direct(structure, n, args, (k,))
        via = (Z(n - k, k - 1) - Z(0, k - 1)) * (b(k) * b(n - k))
        strata.append(Stratum(f"k={k}", direct, via))
    return strata


def strata_polynomial(n: int, unary_sign: int = 1) -> dict:
    """The Jacobi sum as a combination of Z's, with ``Z_{n,i,j} -> s^i t^j``.

    Built from the same stratum formulas as :func:`jacobi_term_decomposition`.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    b = bracket_coefficient
    coeffs: dict = {}

    def add(i, j, c):
        coeffs[(i, j)] = coeffs.get((i, j), 0) + c

    for i in range(n):
        add(i, 0, unary_sign * b(n))
    w = b(1) * b(n - 1)
    add(0, 0, w)
    for i in range(n - 1):
        add(i, 1, -w)
    for k in range(2, n):
        w = b(k) * b(n - k)
        add(n - k, k - 1, w)
        add(0, k - 1, -w)
    return {k: c for k, c in coeffs.items() if c}
