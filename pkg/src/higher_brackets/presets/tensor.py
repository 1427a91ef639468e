"""Tensor products g (x) A of a graded Lie algebra and a graded commutative dg algebra.

    [u (x) a, v (x) b] = (-1)^{|a||v|} [u, v] (x) ab
    d(u (x) a)         = du (x) a + (-1)^{|u|} u (x) da
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import BasisSymbol, Element
from ..dgla import DglaValidationError, StructureConstantDgla, complete_bracket_table, validate


class ConstructionError(ValueError):
    pass


class CommutativeDga:
    """Free graded commutative algebra on generators, truncated by power caps.

    ``generators`` is a list of ``(name, degree, max_power)``; odd
    generators square to zero regardless of the cap. ``differential`` maps
    a generator name to ``{monomial exponent tuple: coeff}``, extended as a
    derivation. ``relations`` lists exponent tuples generating a monomial
    ideal to quotient by; it must be closed under the differential, which
    ``_check`` verifies through the Leibniz rule.
    """

    def __init__(self, generators, differential=None, relations=()):
        self.generators = [(str(n), int(d), int(p)) for n, d, p in generators]
        self.degrees = [d for _, d, _ in self.generators]
        caps = []
        for _, d, p in self.generators:
            caps.append(1 if d % 2 else p)
        self.caps = caps
        self.relations = [tuple(r) for r in relations]
        self.monomials = [
            m for m in itertools.product(*[range(c + 1) for c in caps]) if not self._killed(m)
        ]
        self.monomials.sort(key=lambda m: (self.degree(m), m))
        self._diff_gen = {}
        names = [n for n, _, _ in self.generators]
        for name, image in (differential or {}).items():
            i = names.index(name)
            self._diff_gen[i] = {tuple(k): Fraction(c) for k, c in image.items()}
        self._check()

    def _killed(self, m) -> bool:
        return any(all(e >= r for e, r in zip(m, rel)) for rel in self.relations)

    def degree(self, m) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def unit(self):
        return tuple(0 for _ in self.generators)

    def name(self, m) -> str:
        parts = []
        for (gname, _, _), e in zip(self.generators, m):
            if e == 1:
                parts.append(gname)
            elif e > 1:
                parts.append(f"{gname}^{e}")
        return ".".join(parts)

    def _factors(self, m):
        out = []
        for i, e in enumerate(m):
            out.extend([i] * e)
        return out

    def multiply(self, m1, m2) -> dict:
        """Product of two monomials as ``{monomial: coeff}``."""
        exps = tuple(a + b for a, b in zip(m1, m2))
        if any(e > c for e, c in zip(exps, self.caps)) or self._killed(exps):
            return {}
        # moving the factors of m2 left past those of m1 with larger index
        sign = 1
        f1, f2 = self._factors(m1), self._factors(m2)
        for j in f2:
            if self.degrees[j] % 2 == 0:
                continue
            for i in f1:
                if i > j and self.degrees[i] % 2:
                    sign = -sign
        return {exps: Fraction(sign)}

    def multiply_dicts(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                for m, c in self.multiply(m1, m2).items():
                    out[m] = out.get(m, 0) + c * c1 * c2
        return {m: c for m, c in out.items() if c}

    def differential(self, m) -> dict:
        """Leibniz expansion over the factors of ``m``."""
        factors = self._factors(m)
        out: dict = {}
        before = 0
        for p, i in enumerate(factors):
            left = {self._from_factors(factors[:p]): Fraction(1)}
            right = {self._from_factors(factors[p + 1 :]): Fraction(1)}
            dg = self._diff_gen.get(i, {})
            if dg:
                term = self.multiply_dicts(self.multiply_dicts(left, dg), right)
                sign = -1 if before % 2 else 1
                for mono, c in term.items():
                    out[mono] = out.get(mono, 0) + sign * c
            before += self.degrees[i]
        return {mono: c for mono, c in out.items() if c}

    def _from_factors(self, factors):
        exps = [0] * len(self.generators)
        for i in factors:
            exps[i] += 1
        return tuple(exps)

    def _check(self):
        for m in self.monomials:
            dm = self.differential(m)
            for mono in dm:
                if self.degree(mono) != self.degree(m) - 1:
                    raise ConstructionError(f"differential of {self.name(m)} has the wrong degree")
            ddm: dict = {}
            for mono, c in dm.items():
                for k, v in self.differential(mono).items():
                    ddm[k] = ddm.get(k, 0) + c * v
            if any(ddm.values()):
                raise ConstructionError(f"d^2 != 0 on {self.name(m) or '1'}")
        for m1, m2 in itertools.product(self.monomials, repeat=2):
            lhs: dict = {}
            for mono, c in self.multiply(m1, m2).items():
                for k, v in self.differential(mono).items():
                    lhs[k] = lhs.get(k, 0) + c * v
            sign = -1 if self.degree(m1) % 2 else 1
            rhs = self.multiply_dicts(self.differential(m1), {m2: Fraction(1)})
            for k, v in self.multiply_dicts({m1: Fraction(1)}, self.differential(m2)).items():
                rhs[k] = rhs.get(k, 0) + sign * v
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                raise ConstructionError(
                    f"d is not a derivation on {self.name(m1) or '1'} * {self.name(m2) or '1'}"
                )


@dataclass
class GradedLie:
    """Structure constants of a graded Lie algebra (no differential).

    ``bracket`` lists one orientation per pair: ``(u, v) -> {w: coeff}``.
    """

    basis: list
    bracket: dict = field(default_factory=dict)

    def degree(self, name):
        return dict(self.basis)[name]


@dataclass
class TensorDglaSpec:
    name: str
    lie_part: GradedLie
    graded_part: CommutativeDga


def make_tensor_dgla(spec: TensorDglaSpec) -> StructureConstantDgla:
    g, A = spec.lie_part, spec.graded_part
    gdeg = dict(g.basis)
    gbr = {}
    for (u, v), image in g.bracket.items():
        gbr[u, v] = {w: Fraction(c) for w, c in image.items()}
        sign = -1 if (gdeg[u] * gdeg[v]) % 2 == 0 else 1
        gbr[v, u] = {w: sign * Fraction(c) for w, c in image.items()}

    unit = A.unit()
    symbols = {}
    basis = []
    for m in A.monomials:
        for u, du in g.basis:
            ident = u if m == unit else f"{u}.{A.name(m)}"
            sym = BasisSymbol(ident, du + A.degree(m))
            symbols[u, m] = sym
            basis.append(sym)
    basis.sort(key=lambda s: s.degree)

    diff = {}
    for (u, m), sym in symbols.items():
        sign = -1 if gdeg[u] % 2 else 1
        diff[sym] = Element({symbols[u, k]: sign * c for k, c in A.differential(m).items()})

    table = {}
    for (u, m1), s in symbols.items():
        for (v, m2), t in symbols.items():
            image = gbr.get((u, v))
            if not image:
                continue
            prod = A.multiply(m1, m2)
            if not prod:
                continue
            sign = -1 if (A.degree(m1) * gdeg[v]) % 2 else 1
            terms = {}
            for w, c in image.items():
                for mono, p in prod.items():
                    key = symbols[w, mono]
                    terms[key] = terms.get(key, 0) + sign * c * p
            table[s, t] = Element(terms)
    dgla = StructureConstantDgla(spec.name, basis, diff, table)
    report = validate(dgla)
    if not report.ok:
        raise ConstructionError(f"{spec.name} is not a DGLA: {report.violation}")
    return dgla


# building blocks


def sl2() -> GradedLie:
    return GradedLie(
        [("h", 0), ("e", 0), ("f", 0)],
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
    )


def heisenberg_graded() -> GradedLie:
    """p in degree 0, q and the central c in degree 1, [p, q] = c."""
    return GradedLie([("p", 0), ("q", 1), ("c", 1)], {("p", "q"): {"c": 1}})


def aff() -> GradedLie:
    """The two-dimensional nonabelian Lie algebra, [x, y] = y."""
    return GradedLie([("x", 0), ("y", 0)], {("x", "y"): {"y": 1}})


def abelian(names_degrees) -> GradedLie:
    return GradedLie(list(names_degrees), {})


def exterior_xi() -> CommutativeDga:
    """Lambda[xi], |xi| = 1, d xi = 1."""
    return CommutativeDga([("xi", 1, 1)], {"xi": {(0,): 1}})


def exterior_xi_zeta() -> CommutativeDga:
    """Lambda[xi, zeta], both of degree 1, d zeta = 1, d xi = 0; degrees {0, 1, 2}."""
    return CommutativeDga([("xi", 1, 1), ("zeta", 1, 1)], {"zeta": {(0, 0): 1}})


def xi_eta(eta_cap: int) -> CommutativeDga:
    """Lambda[xi] (x) Q[eta]/(eta^{cap+1}), |xi| = 1, |eta| = 2, d xi = 1."""
    return CommutativeDga([("xi", 1, 1), ("eta", 2, eta_cap)], {"xi": {(0, 0): 1}})


def square_zero_xi12() -> CommutativeDga:
    """Lambda[xi1, xi2] with |xi1| = 1, |xi2| = 2, d xi2 = xi1, modulo xi2^2 and xi1 xi2.

    The relations generate a dg ideal, leaving the basis 1, xi1, xi2.
    """
    return CommutativeDga(
        [("xi1", 1, 1), ("xi2", 2, 2)], {"xi2": {(1, 0): 1}}, relations=[(0, 2), (1, 1)]
    )


def trivial_dga() -> CommutativeDga:
    return CommutativeDga([])


FINITE_SPECS = {
    "heisenberg_xi": lambda: TensorDglaSpec("heisenberg_xi", heisenberg_graded(), exterior_xi()),
    "sl2_xi_eta": lambda: TensorDglaSpec("sl2_xi_eta", sl2(), xi_eta(1)),
    "aff_xi_eta2": lambda: TensorDglaSpec("aff_xi_eta2", aff(), xi_eta(2)),
    "sl2_xi12": lambda: TensorDglaSpec("sl2_xi12", sl2(), square_zero_xi12()),
    "sl2_lie2": lambda: TensorDglaSpec("sl2_lie2", sl2(), exterior_xi_zeta()),
    "sl2_classical": lambda: TensorDglaSpec("sl2_classical", sl2(), exterior_xi()),
    "abelian_line": lambda: TensorDglaSpec("abelian_line", abelian([("a", 1)]), trivial_dga()),
}
