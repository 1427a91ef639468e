"""The mapping cone of a DGLA morphism and its L-infinity brackets.

For ``phi: K -> L`` the shifted cone is ``K[-1] + L``. Its elements are
:class:`~higher_brackets.algebra.Element` values over tagged symbols:
``("K", s)`` sits in degree ``|s| + 1`` and ``("L", s)`` in degree ``|s|``.
The brackets are

    {a}              = delta a
    {x}              = mu phi(x) - delta x
    {x, y}           = (-1)^{sigma(x)} [x, y]
    {x, a_1..a_n}    = b_n sum_pi eps [[...[x, a_pi1], ...], a_pin]

and every other bracket vanishes. ``mu`` and ``sigma`` are parameters; see
:class:`ConeStructure`.

The second half of the module is the path-space model: pairs
``(x, f(t) + g(t) dt)`` with a contraction ``h`` onto the cone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BasisSymbol, Element, accumulate, koszul_sign, symbol_name
from .bernoulli import bracket_coefficient
from .dgla import Dgla, validate
from .derived import DerivedStructure, d_operator
from .linfinity import DEFAULT_MAX_ARITY, LInfinity, jacobi_defect


class ConstraintError(ValueError):
    """A path-space element outside the subalgebra cut out by the endpoint conditions."""


class MorphismError(ValueError):
    pass


class NonpositiveTruncation(Dgla):
    """``tau_{<=0} L`` as a DGLA in its own right (same symbols as ``L``)."""

    def __init__(self, ambient: Dgla):
        self.ambient = ambient
        self.name = f"{ambient.name}<=0"

    def basis(self):
        return [s for s in self.ambient.basis() if s.degree <= 0]

    def symbol(self, name):
        sym = self.ambient.symbol(name)
        if sym.degree > 0:
            raise ValueError(f"{name} has positive degree")
        return sym

    def differential_of(self, sym):
        return self.ambient.differential_of(sym)

    def bracket_of(self, s, t):
        return self.ambient.bracket_of(s, t)


class DglaMorphism:
    """A degree-0 linear map given on basis symbols of ``source``."""

    def __init__(self, source: Dgla, target: Dgla, on_symbol):
        self.source = source
        self.target = target
        self._on_symbol = on_symbol

    def __call__(self, e: Element) -> Element:
        acc: dict = {}
        for s, c in e.items():
            accumulate(acc, self._on_symbol(s), c)
        return Element._wrap(acc)

    def check(self, window=None):
        """First failing property as ``(name, witnesses)``, or None."""
        window = list(self.source.basis() if window is None else window)
        for s in window:
            e = Element.basis(s)
            image = self(e)
            if image and image.degrees() != {s.degree}:
                return "degree", (str(s),)
            if self(self.source.differential(e)) != self.target.differential(image):
                return "chain map", (str(s),)
        for s, t in itertools.product(window, repeat=2):
            a, b = Element.basis(s), Element.basis(t)
            if self(self.source.bracket(a, b)) != self.target.bracket(self(a), self(b)):
                return "bracket", (str(s), str(t))
        return None

    @classmethod
    def inclusion(cls, ambient: Dgla) -> "DglaMorphism":
        """``tau_{<=0} L -> L``."""
        return cls(NonpositiveTruncation(ambient), ambient, Element.basis)


# cone elements


def k_sym(s: BasisSymbol) -> BasisSymbol:
    return BasisSymbol(("K", s), s.degree + 1)


def l_sym(s: BasisSymbol) -> BasisSymbol:
    return BasisSymbol(("L", s), s.degree)


def _retag(e: Element, tag) -> Element:
    return Element._wrap({tag(s): c for s, c in e.items()})


def cone_element(k_part: Element | None = None, l_part: Element | None = None) -> Element:
    """``(x, a)`` as a single element over tagged symbols."""
    out = Element.zero()
    if k_part:
        out = out + _retag(k_part, k_sym)
    if l_part:
        out = out + _retag(l_part, l_sym)
    return out


def split(e: Element):
    """Inverse of :func:`cone_element`: ``(k_part, l_part)``."""
    k, l = {}, {}
    for s, c in e.items():
        tag, inner = s.id
        (k if tag == "K" else l)[inner] = c
    return Element._wrap(k), Element._wrap(l)


def cone_symbol_name(s: BasisSymbol) -> str:
    tag, inner = s.id
    return f"{tag}:{symbol_name(inner)}"


# defaults fixed by the Jacobi and transport tests; see ConeStructure
PHI_SIGN = 1
PAIR_SIGN_DEGREE = "source"


class ConeStructure(LInfinity):
    """The cone brackets of ``phi``.

    ``phi_sign`` is ``mu`` in the unary bracket ``{x} = mu phi(x) - delta x``.
    ``pair_sign_degree`` picks the degree in ``{x, y} = (-1)^{|x|} [x, y]``:
    ``"source"`` uses the degree of ``x`` in ``K``, ``"cone"`` its shifted
    degree. ``coefficient_sign`` multiplies every ``b_n``.

    The defaults are the brackets above, with the sign of ``{x, y}``
    taken from the degree in ``K``; with the cone degree instead, the
    Jacobi rule already fails at n = 1 on any nonabelian ``K``.
    """

    def __init__(self, phi: DglaMorphism, max_arity: int = DEFAULT_MAX_ARITY,
                 phi_sign: int = PHI_SIGN, pair_sign_degree: str = PAIR_SIGN_DEGREE,
                 coefficient_sign: int = 1):
        super().__init__(max_arity)
        if pair_sign_degree not in ("source", "cone"):
            raise ValueError("pair_sign_degree must be 'source' or 'cone'")
        self.phi = phi
        self.phi_sign = phi_sign
        self.pair_sign_degree = pair_sign_degree
        self.coefficient_sign = coefficient_sign

    @property
    def K(self):
        return self.phi.source

    @property
    def L(self):
        return self.phi.target

    def bracket_of_symbols(self, symbols):
        tags = [s.id[0] for s in symbols]
        inner = [Element.basis(s.id[1]) for s in symbols]
        n_k = tags.count("K")
        if len(symbols) == 1:
            if n_k == 0:
                return _retag(self.L.differential(inner[0]), l_sym)
            x = inner[0]
            return _retag(self.phi(x), l_sym) * self.phi_sign - _retag(self.K.differential(x), k_sym)
        if n_k == 2 and len(symbols) == 2:
            x, y = inner
            d = symbols[0].id[1].degree
            if self.pair_sign_degree == "cone":
                d += 1
            return _retag(self.K.bracket(x, y), k_sym) * (-1 if d % 2 else 1)
        if n_k != 1:
            return Element.zero()
        # move the K slot to the front with the Koszul sign of the cone degrees
        pos = tags.index("K")
        degs = [s.degree for s in symbols]
        order = [pos] + [i for i in range(len(symbols)) if i != pos]
        sign = koszul_sign(order, degs)
        n = len(symbols) - 1
        coeff = bracket_coefficient(n) * self.coefficient_sign
        if not coeff:
            return Element.zero()
        x = self.phi(inner[pos])
        rest = [inner[i] for i in order[1:]]
        rest_degs = [degs[i] for i in order[1:]]
        acc: dict = {}
        for perm in itertools.permutations(range(n)):
            value = x
            for p in perm:
                value = self.L.bracket(value, rest[p])
                if not value:
                    break
            if value:
                accumulate(acc, value, koszul_sign(perm, rest_degs))
        return _retag(Element._wrap(acc), l_sym) * (coeff * sign)


def cone_window(phi: DglaMorphism):
    return [k_sym(s) for s in phi.source.basis()] + [l_sym(s) for s in phi.target.basis()]


def cone_jacobi_check(cone: ConeStructure, max_n: int = 3, window=None):
    """First failing ``(n, symbols, defect)`` over multisets of the window, or None."""
    window = list(cone_window(cone.phi) if window is None else window)
    for n in range(max_n + 1):
        for combo in itertools.combinations_with_replacement(window, n + 1):
            defect = jacobi_defect(cone, n, [Element.basis(s) for s in combo])
            if defect:
                return n, combo, defect
    return None


# transport from the positive truncation


# sign of the L component under transport, a -> (D a, TRANSPORT_SIGN a)
TRANSPORT_SIGN = -1


def transport(dgla: Dgla, a: Element, sign: int = TRANSPORT_SIGN) -> Element:
    """``a -> (D a, sign * a)`` into the cone of ``tau_{<=0} L -> L``.

    With ``sign = 1`` the unary brackets already disagree on degree one
    (``{(Da, a)}`` has L-part ``2 delta a``). With ``sign = -1`` arities one
    and two agree exactly and arity three agrees up to a global ``-1``.
    """
    for s in a.symbols():
        if s.degree <= 0:
            raise ValueError(f"{s} is not in the positive truncation")
    return cone_element(d_operator(dgla, a), a * sign)


@dataclass
class TransportReport:
    arity: int
    ok: bool
    checked: int
    witness: tuple = ()
    discrepancy: str = ""
    ratio: Fraction | None = None

    def as_dict(self):
        out = {"arity": self.arity, "ok": self.ok, "checked": self.checked}
        if not self.ok:
            out["witness"] = list(self.witness)
            out["discrepancy"] = self.discrepancy
            if self.ratio is not None:
                out["ratio"] = str(self.ratio)
        return out


def _ratio(a: Element, b: Element):
    """``q`` with ``a = q b`` if one exists."""
    if not b:
        return None
    s, c = next(iter(b.items()))
    q = a.coefficient(s) / c
    return q if a == b * q else None


def transport_agreement(cone: ConeStructure, derived: DerivedStructure, arity: int, window=None,
                        transport_map=None, expected_ratio=1):
    """Compare cone brackets of transported inputs with transported derived brackets.

    ``transport_map(dgla, a)`` defaults to :func:`transport`. The check
    passes when ``cone = expected_ratio * transported`` on every tuple.
    """
    dgla = derived.ambient
    transport_ = transport_map or transport
    window = list(derived.window.basis() if window is None else window)
    checked = 0
    for combo in itertools.combinations_with_replacement(window, arity):
        args = [Element.basis(s) for s in combo]
        lhs = cone.evaluate([transport_(dgla, a) for a in args])
        rhs = transport_(dgla, derived.evaluate(args))
        checked += 1
        if lhs != rhs * expected_ratio:
            return TransportReport(
                arity, False, checked, tuple(str(s) for s in combo),
                f"cone: {_cone_str(lhs)}; transported: {_cone_str(rhs)}", _ratio(lhs, rhs),
            )
    return TransportReport(arity, True, checked)


def _cone_str(e: Element) -> str:
    k, l = split(e)
    return f"({k}, {l})"


# path space K + L[t, dt]

# sign in d(t^k dt (x) a) = DT_SIGN t^k dt (x) delta a, forced by d^2 = 0
DT_SIGN = -1


def _poly_add(p: dict, k: int, e: Element, c=1):
    if not e:
        return
    v = p.get(k, Element.zero()) + e * c
    if v:
        p[k] = v
    else:
        p.pop(k, None)


@dataclass(frozen=True)
class PathElement:
    """``(base, sum_k t^k f_k + sum_k t^k dt g_k)`` with ``g_k`` written to the right of ``t^k dt``.

    ``f`` and ``g`` map powers of ``t`` to elements of ``L``.
    """

    base: Element = field(default_factory=Element.zero)
    f: tuple = ()
    g: tuple = ()

    @classmethod
    def make(cls, base=None, f=None, g=None):
        clean = lambda p: tuple(sorted((k, v) for k, v in (p or {}).items() if v))
        return cls(base if base is not None else Element.zero(), clean(f), clean(g))

    @property
    def fd(self):
        return dict(self.f)

    @property
    def gd(self):
        return dict(self.g)

    def __add__(self, other):
        f, g = self.fd, self.gd
        for k, v in other.f:
            _poly_add(f, k, v)
        for k, v in other.g:
            _poly_add(g, k, v)
        return PathElement.make(self.base + other.base, f, g)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        return PathElement.make(
            self.base * q, {k: v * q for k, v in self.f}, {k: v * q for k, v in self.g}
        )

    def __bool__(self):
        return bool(self.base) or bool(self.f) or bool(self.g)

    def f_at(self, t) -> Element:
        return Element.sum(v * Fraction(t) ** k for k, v in self.f)

    def __str__(self):
        f = " + ".join(f"t^{k}*({v})" for k, v in self.f) or "0"
        g = " + ".join(f"t^{k}dt*({v})" for k, v in self.g) or "0"
        return f"({self.base}, {f} + {g})"


def in_path_subalgebra(phi: DglaMorphism, p: PathElement) -> bool:
    """``f(0) = 0`` and ``f(1) = phi(x)``."""
    return not p.fd.get(0) and p.f_at(1) == phi(p.base)


def path_differential(phi: DglaMorphism, p: PathElement) -> PathElement:
    L = phi.target
    f, g = {}, {}
    for k, v in p.f:
        _poly_add(f, k, L.differential(v))
        if k:
            _poly_add(g, k - 1, v, k)
    for k, v in p.g:
        _poly_add(g, k, L.differential(v), DT_SIGN)
    return PathElement.make(phi.source.differential(p.base), f, g)


def path_bracket(phi: DglaMorphism, p: PathElement, q: PathElement, constrained: bool = True) -> PathElement:
    """``[alpha a, beta b] = (-1)^{|a||beta|} alpha beta [a, b]``, with ``|dt| = -1``."""
    if constrained:
        for e in (p, q):
            if not in_path_subalgebra(phi, e):
                raise ConstraintError(f"{e} violates f(0) = 0, f(1) = phi(x)")
    L = phi.target
    f, g = {}, {}
    for (i, a), (j, b) in itertools.product(p.f, q.f):
        _poly_add(f, i + j, L.bracket(a, b))
    for (i, a), (j, b) in itertools.product(p.f, q.g):
        # beta = t^j dt is odd
        sign = -1 if a.degree % 2 else 1
        _poly_add(g, i + j, L.bracket(a, b), sign)
    for (i, a), (j, b) in itertools.product(p.g, q.f):
        _poly_add(g, i + j, L.bracket(a, b))
    return PathElement.make(phi.source.bracket(p.base, q.base), f, g)


def homotopy_h(phi: DglaMorphism, p: PathElement, variant: str = "A") -> PathElement:
    """``(0, int_0^t g - t int_0^1 g)``; variant ``"B"`` also adds ``t phi(x)``."""
    f: dict = {}
    for k, v in p.g:
        # int_0^t s^k ds - t int_0^1 s^k ds = (t^{k+1} - t) / (k+1)
        _poly_add(f, k + 1, v, Fraction(1, k + 1))
        _poly_add(f, 1, v, Fraction(-1, k + 1))
    if variant == "B":
        _poly_add(f, 1, phi(p.base))
    elif variant != "A":
        raise ValueError(f"unknown homotopy variant {variant!r}")
    return PathElement.make(Element.zero(), f, {})


INCLUSIONS = ("stated", "endpoint")


def include(phi: DglaMorphism, x: Element, a: Element, inclusion: str = "endpoint") -> PathElement:
    """The cone inside the path space.

    ``"stated"`` is ``(x, a dt)``; it leaves the subalgebra unless
    ``phi(x) = 0``. ``"endpoint"`` is ``(x, t phi(x) + a dt)``.
    """
    if inclusion == "stated":
        return PathElement.make(x, {}, {0: a})
    if inclusion == "endpoint":
        return PathElement.make(x, {1: phi(x)}, {0: a})
    raise ValueError(f"unknown inclusion {inclusion!r}")


def path_window(phi: DglaMorphism, max_t: int = 3):
    """Spanning elements of the subalgebra: ``(x, t phi x)``, ``(0, (t^k - t) e)``, ``(0, t^k dt e)``."""
    out = []
    for s in phi.source.basis():
        x = Element.basis(s)
        out.append(PathElement.make(x, {1: phi(x)}))
    for s in phi.target.basis():
        e = Element.basis(s)
        for k in range(2, max_t + 1):
            out.append(PathElement.make(None, {k: e, 1: -e}))
        for k in range(max_t + 1):
            out.append(PathElement.make(None, {}, {k: e}))
    return out


def free_path_window(phi: DglaMorphism, max_t: int = 3):
    """Monomials ``t^k e`` and ``t^k dt e`` with no endpoint conditions, plus the base."""
    out = [PathElement.make(Element.basis(s)) for s in phi.source.basis()]
    for s in phi.target.basis():
        e = Element.basis(s)
        for k in range(max_t + 1):
            out.append(PathElement.make(None, {k: e}))
            out.append(PathElement.make(None, {}, {k: e}))
    return out


def path_degree(p: PathElement):
    degs = {s.degree for s in p.base.symbols()}
    degs |= {s.degree for _, v in p.f for s in v.symbols()}
    degs |= {s.degree - 1 for _, v in p.g for s in v.symbols()}
    return degs


def path_algebra_check(phi: DglaMorphism, max_t: int = 3):
    """``d^2 = 0`` and the graded Leibniz rule on free monomials; first failure or None."""
    window = free_path_window(phi, max_t)
    d = lambda p: path_differential(phi, p)
    br = lambda p, q: path_bracket(phi, p, q, constrained=False)
    for p in window:
        if d(d(p)):
            return "d^2 = 0", (str(p),)
    for p, q in itertools.product(window, repeat=2):
        (dp,) = path_degree(p)
        sign = -1 if dp % 2 else 1
        if d(br(p, q)) != br(d(p), q) + br(p, d(q)) * sign:
            return "graded Leibniz", (str(p), str(q))
    return None


@dataclass
class ContractionReport:
    variant: str
    inclusion: str
    checks: dict

    @property
    def ok(self):
        return all(v is None for v in self.checks.values())

    def as_dict(self):
        return {
            "variant": self.variant,
            "inclusion": self.inclusion,
            "ok": self.ok,
            "checks": {k: ("pass" if v is None else v) for k, v in sorted(self.checks.items())},
        }


def projection(phi: DglaMorphism, p: PathElement, variant: str = "A") -> PathElement:
    """``p = id - (d h + h d)``."""
    d = lambda e: path_differential(phi, e)
    h = lambda e: homotopy_h(phi, e, variant)
    return p - d(h(p)) - h(d(p))


def _in_image(phi, p: PathElement, inclusion: str) -> bool:
    g = p.gd
    if set(g) - {0}:
        return False
    return p == include(phi, p.base, g.get(0, Element.zero()), inclusion)


def contraction_check(phi: DglaMorphism, variant: str = "A", inclusion: str = "endpoint", max_t: int = 3):
    """Chain map, idempotence, image and fixed-point properties of ``p``."""
    window = path_window(phi, max_t)
    d = lambda e: path_differential(phi, e)
    P = lambda e: projection(phi, e, variant)
    checks = {"chain map": None, "idempotent": None, "image": None, "fixes subcomplex": None}
    for e in window:
        pe = P(e)
        if checks["chain map"] is None and d(pe) != P(d(e)):
            checks["chain map"] = str(e)
        if checks["idempotent"] is None and P(pe) != pe:
            checks["idempotent"] = str(e)
        if checks["image"] is None and not _in_image(phi, pe, inclusion):
            checks["image"] = str(e)
    for s in phi.source.basis():
        inc = include(phi, Element.basis(s), Element.zero(), inclusion)
        if checks["fixes subcomplex"] is None and P(inc) != inc:
            checks["fixes subcomplex"] = str(inc)
    for s in phi.target.basis():
        inc = include(phi, Element.zero(), Element.basis(s), inclusion)
        if checks["fixes subcomplex"] is None and P(inc) != inc:
            checks["fixes subcomplex"] = str(inc)
    return ContractionReport(variant, inclusion, checks)


def contraction_survey(phi: DglaMorphism, max_t: int = 3):
    """Every (variant, inclusion) pair, in a fixed order."""
    return [
        contraction_check(phi, v, i, max_t) for v in ("A", "B") for i in INCLUSIONS
    ]


def check_morphism(phi: DglaMorphism):
    for alg in (phi.source, phi.target):
        report = validate(alg)
        if not report.ok:
            raise MorphismError(f"{alg.name}: {report.violation}")
    failure = phi.check()
    if failure:
        raise MorphismError(f"not a DGLA morphism ({failure[0]}) at {failure[1]}")
    return phi
