"""Generic L-infinity machinery.

Operations are graded symmetric and of degree -1 (the "shifted"
convention), so the generalized Jacobi rule carries only the Koszul sign
of the unshuffle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import BasisSymbol, Element, accumulate, basis_expansions, koszul_sign, unshuffles

DEFAULT_MAX_ARITY = 5


class ArityError(ValueError):
    pass


class LInfinity:
    """A family of multibrackets, evaluated multilinearly from basis values.

    Subclasses implement :meth:`bracket_of_symbols` for a tuple of basis
    symbols. Results on symbol tuples are memoized in canonical (sorted)
    order using graded symmetry; ``direct=True`` bypasses both the memo and
    the reordering, which is what symmetry checks must use.
    """

    degree_floor: int | None = None
    degree_ceiling: int | None = None

    def __init__(self, max_arity: int = DEFAULT_MAX_ARITY):
        self.max_arity = max_arity
        self._memo: dict = {}

    def bracket_of_symbols(self, symbols: tuple) -> Element:
        raise NotImplementedError

    def _canonical(self, symbols: tuple):
        order = sorted(range(len(symbols)), key=lambda i: _sort_key(symbols[i]))
        sign = koszul_sign(order, [s.degree for s in symbols])
        return sign, tuple(symbols[i] for i in order)

    def evaluate_symbols(self, symbols: tuple, direct: bool = False) -> Element:
        if direct:
            return self.bracket_of_symbols(symbols)
        sign, key = self._canonical(symbols)
        value = self._memo.get(key)
        if value is None:
            value = self.bracket_of_symbols(key)
            self._memo[key] = value
        return value if sign == 1 else -value

    def evaluate(self, args, direct: bool = False) -> Element:
        args = list(args)
        if not 1 <= len(args) <= self.max_arity:
            raise ArityError(f"arity {len(args)} outside 1..{self.max_arity}")
        acc: dict = {}
        for coeff, symbols in basis_expansions(args):
            accumulate(acc, self.evaluate_symbols(symbols, direct), coeff)
        return Element._wrap(acc)

    def __call__(self, *args) -> Element:
        return self.evaluate(args)

    def clear_cache(self):
        self._memo.clear()


def _sort_key(sym: BasisSymbol):
    return (sym.degree, repr(sym.id))


# checks


@dataclass
class SymmetryResult:
    ok: bool
    position: int | None = None
    defect: Element | None = None

    def __bool__(self):
        return self.ok


def check_symmetry(b: LInfinity, args) -> SymmetryResult:
    """Check every adjacent-swap identity on homogeneous ``args`` exactly."""
    args = list(args)
    degs = [a.degree if a else 0 for a in args]
    base = b.evaluate(args, direct=True)
    for i in range(1, len(args)):
        swapped = args[: i - 1] + [args[i], args[i - 1]] + args[i + 1 :]
        sign = -1 if (degs[i - 1] * degs[i]) % 2 else 1
        defect = base - b.evaluate(swapped, direct=True) * sign
        if defect:
            return SymmetryResult(False, i, defect)
    return SymmetryResult(True)


@dataclass
class JacobiReport:
    arity: int
    defect: Element
    witnesses: tuple

    @property
    def ok(self) -> bool:
        return not self.defect

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {
            "arity": self.arity,
            "defect": str(self.defect),
            "witnesses": [str(w) for w in self.witnesses],
        }


def _jacobi_homogeneous(b: LInfinity, n: int, args) -> Element:
    degs = [a.degree for a in args]
    acc: dict = {}
    for k in range(n + 1):
        for inner_idx, outer_idx, perm in unshuffles(n, k):
            inner = b.evaluate([args[i] for i in inner_idx])
            if not inner:
                continue
            outer = b.evaluate([inner] + [args[j] for j in outer_idx])
            accumulate(acc, outer, koszul_sign(perm, degs))
    return Element._wrap(acc)


def jacobi_defect(b: LInfinity, n: int, args) -> Element:
    """Left-hand side of the n-th generalized Jacobi rule on ``n+1`` inputs."""
    args = list(args)
    if len(args) != n + 1:
        raise ArityError(f"the {n}th Jacobi rule takes {n + 1} arguments, got {len(args)}")
    if n + 1 > b.max_arity:
        raise ArityError(f"arity {n + 1} exceeds the cap {b.max_arity}")
    if not all(args):
        return Element.zero()
    acc: dict = {}
    for parts in itertools.product(*[list(a.components().values()) for a in args]):
        accumulate(acc, _jacobi_homogeneous(b, n, parts))
    return Element._wrap(acc)


def jacobi_report(b: LInfinity, n: int, args) -> JacobiReport:
    return JacobiReport(n, jacobi_defect(b, n, args), tuple(args))


@dataclass
class LieNResult:
    ok: bool
    reason: str = ""
    witnesses: tuple = ()

    def __bool__(self):
        return self.ok


def is_lie_n(b: LInfinity, n: int, window) -> LieNResult:
    """Check concentration in degrees [1, n] and vanishing of high brackets.

    Every bracket of arity ``n+2`` up to ``b.max_arity`` is evaluated on all
    multisets of window symbols.
    """
    window = list(window)
    for s in window:
        if not 1 <= s.degree <= n:
            return LieNResult(False, f"degree {s.degree} outside [1, {n}]", (str(s),))
    for arity in range(n + 2, b.max_arity + 1):
        for combo in itertools.combinations_with_replacement(window, arity):
            value = b.evaluate_symbols(combo, direct=True)
            if value:
                return LieNResult(
                    False, f"arity-{arity} bracket is nonzero: {value}", tuple(str(s) for s in combo)
                )
    return LieNResult(True)
