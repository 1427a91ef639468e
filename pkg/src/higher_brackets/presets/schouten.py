"""Polynomial multivector fields with the Schouten bracket.

A multivector is a polynomial in commuting x_1..x_d and anticommuting
theta_1..theta_d (theta_i standing for d/dx_i). A monomial with k thetas
has degree 1 - k: functions sit in degree 1, vector fields in degree 0,
bivectors in degree -1.

The bracket is the odd Poisson bracket

    [A, B] = sum_i (A d/dtheta_i) (d/dx_i B) - (A d/dx_i) (d/dtheta_i B)

with the theta derivative of A taken from the right and that of B from
the left. ``SCHOUTEN_SIGN`` is the sign of the second sum; it is the only
choice under which graded antisymmetry holds for this grading.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from ..algebra import BasisSymbol, Element, accumulate
from ..dgla import Dgla, UnknownSymbolError

SCHOUTEN_SIGN = -1


class Monomial(NamedTuple):
    exps: tuple
    thetas: tuple

    @property
    def name(self) -> str:
        parts = []
        for i, e in enumerate(self.exps, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        parts.extend(f"t{i + 1}" for i in self.thetas)
        return "".join(parts) or "1"

    @property
    def degree(self) -> int:
        return 1 - len(self.thetas)


_TOKEN = re.compile(r"([xt])(\d+)(?:\^(\d+))?")


def parse_monomial(name: str, dim: int) -> Monomial:
    """Inverse of ``Monomial.name``: ``"x1^2x2t1t3"`` etc."""
    exps = [0] * dim
    thetas = []
    if name == "1":
        return Monomial(tuple(exps), ())
    pos = 0
    while pos < len(name):
        m = _TOKEN.match(name, pos)
        if m is None:
            raise UnknownSymbolError(f"cannot parse monomial {name!r}")
        kind, idx, power = m.group(1), int(m.group(2)), m.group(3)
        if not 1 <= idx <= dim:
            raise UnknownSymbolError(f"variable index {idx} out of range 1..{dim} in {name!r}")
        if kind == "x":
            exps[idx - 1] += int(power) if power else 1
        else:
            if power is not None and int(power) != 1:
                raise UnknownSymbolError(f"odd variable raised to a power in {name!r}")
            thetas.append(idx - 1)
        pos = m.end()
    if len(set(thetas)) != len(thetas):
        raise UnknownSymbolError(f"repeated odd variable in {name!r}")
    # names list thetas in increasing order; anything else is ambiguous about sign
    if thetas != sorted(thetas):
        raise UnknownSymbolError(f"odd variables must be listed in increasing order in {name!r}")
    return Monomial(tuple(exps), tuple(thetas))


def _sym(m: Monomial) -> BasisSymbol:
    return BasisSymbol(m, m.degree)


def _merge_thetas(a: tuple, b: tuple):
    """theta_a * theta_b as (sign, sorted tuple), or None if they overlap."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def _theta_derivative(thetas: tuple, i: int, side: str):
    if i not in thetas:
        return None
    p = thetas.index(i)
    moves = p if side == "left" else len(thetas) - 1 - p
    return (-1 if moves % 2 else 1), thetas[:p] + thetas[p + 1 :]


def _x_derivative(exps: tuple, i: int):
    e = exps[i]
    if e == 0:
        return None
    return e, exps[:i] + (e - 1,) + exps[i + 1 :]


def _product(c1, exps1, th1, c2, exps2, th2):
    merged = _merge_thetas(th1, th2)
    if merged is None:
        return None
    sign, th = merged
    return sign * c1 * c2, Monomial(tuple(a + b for a, b in zip(exps1, exps2)), th)


@lru_cache(maxsize=None)
def schouten_monomials(a: Monomial, b: Monomial, sign: int = SCHOUTEN_SIGN) -> Element:
    dim = len(a.exps)
    acc: dict = {}
    for i in range(dim):
        da = _theta_derivative(a.thetas, i, "right")
        db = _x_derivative(b.exps, i)
        if da and db:
            term = _product(da[0], a.exps, da[1], db[0], db[1], b.thetas)
            if term:
                c, m = term
                s = _sym(m)
                acc[s] = acc.get(s, 0) + c
        da = _x_derivative(a.exps, i)
        db = _theta_derivative(b.thetas, i, "left")
        if da and db:
            term = _product(da[0], da[1], a.thetas, db[0], b.exps, db[1])
            if term:
                c, m = term
                s = _sym(m)
                acc[s] = acc.get(s, 0) + sign * c
    return Element(acc)


def schouten_bracket(A: Element, B: Element, sign: int = SCHOUTEN_SIGN) -> Element:
    acc: dict = {}
    for s, c in A.items():
        for t, d in B.items():
            accumulate(acc, schouten_monomials(s.id, t.id, sign), c * d)
    return Element._wrap(acc)


def _check_dim(e: Element, dim: int):
    for s in e.symbols():
        if len(s.id.exps) != dim:
            raise ValueError(f"{s} does not live in {dim} variables")


class SchoutenDgla(Dgla):
    """Polynomial multivectors on Q^d with differential ``[P, -]``.

    ``poisson`` is a bivector (or None for the zero differential); the
    master equation ``[P, P] = 0`` is checked at construction. This algebra
    is infinite-dimensional and does not enumerate a basis; use
    :meth:`monomial_window` for sweeps.
    """

    enumerable = False

    def __init__(self, dim: int, poisson: Element | None = None, name: str | None = None,
                 sign: int = SCHOUTEN_SIGN):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.sign = sign
        self.name = name or f"schouten{dim}"
        self.poisson = poisson if poisson is not None else Element.zero()
        _check_dim(self.poisson, dim)
        if self.poisson and self.poisson.degrees() != {-1}:
            raise ValueError("a Poisson tensor must be a bivector (degree -1)")
        master = self.bracket(self.poisson, self.poisson)
        if master:
            raise PoissonError(f"[P, P] = {master} != 0")

    def symbol(self, name: str) -> BasisSymbol:
        return _sym(parse_monomial(name, self.dim))

    def monomial(self, exps=None, thetas=()) -> Element:
        exps = tuple(exps) if exps is not None else (0,) * self.dim
        if len(exps) != self.dim or any(i < 0 or i >= self.dim for i in thetas):
            raise ValueError("variable index out of range")
        merged = _merge_thetas((), tuple(thetas)) if len(set(thetas)) == len(thetas) else None
        if merged is None:
            return Element.zero()
        sign = 1
        th = tuple(thetas)
        # sign of sorting the given theta order
        for p in range(len(th)):
            for q in range(p + 1, len(th)):
                if th[p] > th[q]:
                    sign = -sign
        return Element.basis(_sym(Monomial(exps, tuple(sorted(th)))), sign)

    def x(self, i: int) -> Element:
        exps = [0] * self.dim
        exps[i - 1] = 1
        return self.monomial(exps)

    def theta(self, *indices) -> Element:
        return self.monomial(None, [i - 1 for i in indices])

    def differential_of(self, sym):
        if not self.poisson:
            return Element.zero()
        return schouten_bracket(self.poisson, Element.basis(sym), self.sign)

    def bracket_of(self, s, t):
        return schouten_monomials(s.id, t.id, self.sign)

    def bracket(self, a, b):
        return schouten_bracket(a, b, self.sign)

    def monomial_window(self, max_poly_degree: int = 2, max_theta_degree: int = 2, min_theta_degree: int = 0):
        """All monomials up to the given polynomial and theta degrees."""
        out = []
        for total in range(max_poly_degree + 1):
            for exps in _compositions(total, self.dim):
                for k in range(min_theta_degree, max_theta_degree + 1):
                    for th in itertools.combinations(range(self.dim), k):
                        out.append(_sym(Monomial(exps, th)))
        return out

    def function_window(self, max_poly_degree: int = 2):
        return self.monomial_window(max_poly_degree, 0)


class PoissonError(ValueError):
    pass


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def poisson_differential(P: Element, dim: int):
    """``X -> [P, X]``; raises :class:`PoissonError` unless ``[P, P] = 0``."""
    algebra = SchoutenDgla(dim, P)
    return algebra.differential


def lie_poisson_tensor(dim: int, structure: dict) -> Element:
    """``sum_{a<b} c_ab^c x_c theta_a theta_b`` from Lie structure constants.

    ``structure`` maps 1-based ``(a, b)`` with ``a < b`` to ``{c: coeff}``.
    """
    helper = SchoutenDgla(dim)
    acc = Element.zero()
    for (a, b), image in structure.items():
        for c, coeff in image.items():
            term = helper.x(c) * Fraction(coeff)
            acc = acc + _times(helper, term, helper.theta(a, b))
    return acc


def _times(alg: SchoutenDgla, f: Element, g: Element) -> Element:
    acc: dict = {}
    for s, c in f.items():
        for t, d in g.items():
            term = _product(c, s.id.exps, s.id.thetas, d, t.id.exps, t.id.thetas)
            if term:
                coeff, m = term
                sym = _sym(m)
                acc[sym] = acc.get(sym, 0) + coeff
    return Element(acc)


def symplectic_plane() -> SchoutenDgla:
    """``P = theta_1 theta_2`` on Q^2."""
    alg = SchoutenDgla(2)
    return SchoutenDgla(2, alg.theta(1, 2), name="poisson_symplectic")


SL2_STRUCTURE = {
    # x1 = h, x2 = e, x3 = f
    (1, 2): {2: 2},
    (1, 3): {3: -2},
    (2, 3): {1: 1},
}

SO3_STRUCTURE = {
    (1, 2): {3: 1},
    (2, 3): {1: 1},
    (1, 3): {2: -1},
}


def lie_poisson_sl2() -> SchoutenDgla:
    """Linear Poisson structure on sl2^*; ``[P, P] = 0`` is re-checked on construction."""
    return SchoutenDgla(3, lie_poisson_tensor(3, SL2_STRUCTURE), name="poisson_sl2")


def lie_poisson_so3() -> SchoutenDgla:
    return SchoutenDgla(3, lie_poisson_tensor(3, SO3_STRUCTURE), name="poisson_so3")


def poisson_bracket_derived(algebra: SchoutenDgla, f: Element, g: Element):
    """Return ``(derived 2-bracket, [delta_P f, g])`` for functions f, g."""
    for e in (f, g):
        if e and e.degrees() != {1}:
            raise ValueError("Poisson brackets are taken between functions")
    from ..derived import explicit_binary

    derived = explicit_binary(algebra, f, g)
    classical = algebra.bracket(algebra.differential(f), g)
    return derived, classical
