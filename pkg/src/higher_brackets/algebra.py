"""Exact graded linear algebra.

Elements are finite formal combinations of graded basis symbols with
``Fraction`` coefficients. Everything here is immutable and exact.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence


class RationalParseError(ValueError):
    pass


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or a plain int) into a Fraction.

    Floats are refused: every coefficient must be exact.
    """
    if isinstance(text, bool):
        raise RationalParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise RationalParseError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class BasisSymbol(NamedTuple):
    id: Hashable
    degree: int

    def __str__(self):
        return symbol_name(self)


def symbol_name(sym: BasisSymbol) -> str:
    ident = sym.id
    if hasattr(ident, "name"):
        return ident.name
    return str(ident)


def _symbol_key(sym: BasisSymbol):
    return (sym.degree, symbol_name(sym))


class Element:
    """A finite linear combination of basis symbols.

    >>> a, b = BasisSymbol("a", 1), BasisSymbol("b", 2)
    >>> e = Element({a: 2, b: Fraction(-1, 3)})
    >>> str(e)
    '2*a - 1/3*b'
    >>> e.homogeneous_component(2)
    Element('-1/3*b')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[BasisSymbol, object] | None = None):
        clean = {}
        if terms:
            for sym, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[sym] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "Element":
        # trusted constructor: terms already free of zeros
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def basis(cls, sym: BasisSymbol, coeff=1) -> "Element":
        return cls({sym: coeff})

    @classmethod
    def zero(cls) -> "Element":
        return cls._wrap({})

    @classmethod
    def sum(cls, elements: Iterable["Element"]) -> "Element":
        acc: dict = {}
        for e in elements:
            accumulate(acc, e)
        return cls._wrap(acc)

    # mapping-like access
    @property
    def terms(self) -> Mapping[BasisSymbol, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def symbols(self):
        return self._terms.keys()

    def coefficient(self, sym: BasisSymbol) -> Fraction:
        return self._terms.get(sym, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[BasisSymbol]:
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # linear structure
    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._terms)
        accumulate(acc, other)
        return Element._wrap(acc)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._terms)
        accumulate(acc, other, -1)
        return Element._wrap(acc)

    def __neg__(self) -> "Element":
        return Element._wrap({s: -c for s, c in self._terms.items()})

    def __mul__(self, scalar) -> "Element":
        if isinstance(scalar, Element):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return Element._wrap({})
        return Element._wrap({s: scalar * c for s, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # grading
    def degrees(self) -> set:
        return {s.degree for s in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element {self} has no single degree")
        return next(iter(degs))

    def homogeneous_component(self, d: int) -> "Element":
        return Element._wrap({s: c for s, c in self._terms.items() if s.degree == d})

    def components(self) -> dict:
        """Split into homogeneous parts, keyed by degree."""
        out: dict = {}
        for s, c in self._terms.items():
            out.setdefault(s.degree, {})[s] = c
        return {d: Element._wrap(t) for d, t in sorted(out.items())}

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: _symbol_key(kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for sym, c in self.sorted_items():
            name = symbol_name(sym)
            if c == 1:
                body = name
            elif c == -1:
                body = "-" + name
            else:
                body = f"{format_rational(c)}*{name}"
            if parts:
                if body.startswith("-"):
                    parts.append("- " + body[1:])
                else:
                    parts.append("+ " + body)
            else:
                parts.append(body)
        return " ".join(parts)

    def __repr__(self):
        return f"Element({str(self)!r})"


def accumulate(acc: dict, e: Element, coeff=1) -> None:
    """In-place ``acc += coeff * e`` on a raw term dict, dropping zeros."""
    if coeff == 1:
        for s, c in e._terms.items():
            v = acc.get(s, 0) + c
            if v:
                acc[s] = v
            else:
                acc.pop(s, None)
    else:
        for s, c in e._terms.items():
            v = acc.get(s, 0) + coeff * c
            if v:
                acc[s] = v
            else:
                acc.pop(s, None)


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(e: Element, q) -> Element:
    return e * q


def homogeneous_component(e: Element, d: int) -> Element:
    return e.homogeneous_component(d)


def linear_extension(f, e: Element) -> Element:
    """Extend a map on basis symbols linearly to ``e``."""
    acc: dict = {}
    for s, c in e._terms.items():
        accumulate(acc, f(s), c)
    return Element._wrap(acc)


def bilinear_extension(f, a: Element, b: Element) -> Element:
    acc: dict = {}
    for s, c in a._terms.items():
        for t, d in b._terms.items():
            accumulate(acc, f(s, t), c * d)
    return Element._wrap(acc)


def homogeneous_expansions(args: Sequence[Element]):
    """Yield tuples of homogeneous components, one per argument.

    Multilinear operations are evaluated by summing over these.
    """
    parts = [list(a.components().values()) for a in args]
    return itertools.product(*parts)


def basis_expansions(args: Sequence[Element]):
    """Yield ``(coeff, symbols)`` over all products of basis terms."""
    lists = [list(a.items()) for a in args]
    for combo in itertools.product(*lists):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        yield coeff, tuple(s for s, _ in combo)


# permutations and Koszul signs


class Permutation:
    """A permutation of ``0..n`` acting on sequences by ``seq -> [seq[p] for p in images]``.

    ``sigma * tau`` is the permutation obtained by acting with ``tau``
    first and then with ``sigma``, so ``(sigma * tau).act(s) ==
    sigma.act(tau.act(s))``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(range(size))

    def __len__(self):
        return len(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def act(self, seq: Sequence):
        if len(seq) != len(self.images):
            raise ValueError("length mismatch")
        return [seq[p] for p in self.images]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return Permutation(other.images[p] for p in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, p in enumerate(self.images):
            inv[p] = i
        return Permutation(inv)

    def koszul_sign(self, degrees: Sequence[int]) -> int:
        return koszul_sign(self, degrees)


def koszul_sign(perm: Permutation | Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign of reordering ``a_0 ... a_n`` into ``a_{p_0} ... a_{p_n}``.

    Computed by bubble-sorting the image sequence back to the identity and
    picking up ``(-1)^{|a||b|}`` at every adjacent swap.
    """
    images = list(perm.images if isinstance(perm, Permutation) else perm)
    if len(images) != len(degrees):
        raise ValueError(
            f"permutation of length {len(images)} applied to {len(degrees)} degrees"
        )
    parity = [d & 1 for d in degrees]
    sign = 1
    n = len(images)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            p, q = images[i], images[i + 1]
            if p > q:
                images[i], images[i + 1] = q, p
                if parity[p] and parity[q]:
                    sign = -sign
    return sign


def unshuffles(n: int, k: int):
    """Enumerate splittings of ``{0..n}`` into ``I`` (size k+1) and ``J``.

    Yields ``(I, J, perm)`` where ``perm`` has images ``I + J``; its Koszul
    sign on the argument degrees is the sign of the corresponding term in
    the generalized Jacobi rule.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    universe = range(n + 1)
    for inner in itertools.combinations(universe, k + 1):
        rest = tuple(i for i in universe if i not in inner)
        yield inner, rest, Permutation(inner + rest)
