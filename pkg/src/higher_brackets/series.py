"""Truncated power series in x over Laurent polynomials in s and t.

Used to check the Bernoulli generating-function identities behind the
even-arity case of the Jacobi rule. All coefficients are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bernoulli import bernoulli, bracket_coefficient

DEFAULT_ORDER = 12


class BivarPoly:
    """Sparse polynomial in s, t with exponents >= -1."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < -1 or j < -1:
                raise ValueError(f"exponent below -1 in s^{i} t^{j}")
            c = Fraction(c)
            if c:
                clean[(i, j)] = clean.get((i, j), 0) + c
                if not clean[(i, j)]:
                    del clean[(i, j)]
        self.terms = clean

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def s(cls, power: int = 1, c=1) -> "BivarPoly":
        return cls({(power, 0): c})

    @classmethod
    def t(cls, power: int = 1, c=1) -> "BivarPoly":
        return cls({(0, power): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BivarPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in _coerce(other).terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BivarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return BivarPoly()
            return BivarPoly._raw({k: c * other for k, c in self.terms.items()})
        other = _coerce(other)
        out: dict = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                v = out.get(key, 0) + c * d
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return BivarPoly(out)

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def swap(self) -> "BivarPoly":
        """Exchange the roles of s and t."""
        return BivarPoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def min_t_exponent(self) -> int:
        return min((j for _, j in self.terms), default=0)

    def substitute_t(self) -> dict:
        """Substitute ``t = 1 - s``; returns ``{power of s: coeff}``.

        Only defined when no negative power of t occurs.
        """
        if self.min_t_exponent() < 0:
            raise ValueError("cannot substitute t = 1 - s into a negative power of t")
        out: dict = {}
        for (i, j), c in self.terms.items():
            # (1 - s)^j = sum_m C(j, m) (-s)^m
            for m in range(j + 1):
                key = i + m
                v = out.get(key, 0) + c * math.comb(j, m) * (-1) ** m
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return dict(sorted(out.items()))

    def __repr__(self):
        if not self.terms:
            return "BivarPoly(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = "*".join(
                x for x in (_power("s", i), _power("t", j)) if x
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "BivarPoly(" + " + ".join(parts) + ")"


def _power(var, e):
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _coerce(x) -> BivarPoly:
    if isinstance(x, BivarPoly):
        return x
    return BivarPoly.const(x)


def polynomial_residual(coeffs: dict) -> dict:
    """``{(i, j): c}`` -> the nonzero coefficients after ``t = 1 - s``."""
    return BivarPoly(coeffs).substitute_t()


class TruncatedSeries:
    """``sum_{n <= order} c_n x^n`` with :class:`BivarPoly` coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        coeffs = [_coerce(c) for c in coeffs][: order + 1]
        coeffs += [BivarPoly()] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.order)
        if other.order != self.order:
            raise ValueError("series truncated at different orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BivarPoly)):
            return TruncatedSeries([a * other for a in self.coeffs], self.order)
        other = self._check(other)
        out = [BivarPoly() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, self.order)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if set(c0.terms) != {(0, 0)}:
            raise ArithmeticError(f"constant term {c0} is not a unit")
        inv0 = 1 / c0.terms[(0, 0)]
        out = [BivarPoly.const(inv0)]
        for n in range(1, self.order + 1):
            acc = BivarPoly()
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(acc * (-inv0))
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by ``x^k``; the dropped coefficients must vanish."""
        for n in range(k):
            if self.coeffs[n]:
                raise ArithmeticError(f"x^{n} coefficient {self.coeffs[n]} blocks division by x^{k}")
        return TruncatedSeries(self.coeffs[k:], self.order - k)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def map(self, f) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.order)

    def __repr__(self):
        body = ", ".join(repr(c) for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, [{body}])"


def exp_series(scale: BivarPoly, order: int, minus_one: bool = False, over_x: bool = False) -> TruncatedSeries:
    """``e^{u x}``, optionally ``e^{u x} - 1`` and optionally divided by x.

    ``over_x`` keeps the full requested order by generating one extra
    term before the shift.
    """
    u = _coerce(scale)
    top = order + 1 if over_x else order
    coeffs = []
    power = BivarPoly.const(1)
    for n in range(top + 1):
        coeffs.append(power * Fraction(1, math.factorial(n)))
        power = power * u
    if minus_one:
        coeffs[0] = coeffs[0] - 1
    series = TruncatedSeries(coeffs, top)
    if over_x:
        series = series.shift_down(1)
    return series


def f_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``x/(e^x - 1) + x/2``, by inverting ``(e^x - 1)/x``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    quotient = exp_series(BivarPoly.const(1), order, minus_one=True, over_x=True)
    series = quotient.inverse()
    return series + TruncatedSeries([0, Fraction(1, 2)], order)


def rescale(series: TruncatedSeries, u: BivarPoly) -> TruncatedSeries:
    """``F(x) -> F(u x)``."""
    u = _coerce(u)
    out = []
    power = BivarPoly.const(1)
    for c in series.coeffs:
        out.append(c * power)
        power = power * u
    return TruncatedSeries(out, series.order)


S = BivarPoly.s()
T = BivarPoly.t()


def a_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``A(s,t,x) = (f(x) - f(sx)) f(tx) / t``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    f = f_series(order)
    return (f - rescale(f, S)) * rescale(f, T) * BivarPoly.t(-1)


def symmetrized_direct(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``st (A(s,t,x) + A(t,s,x))``."""
    a = a_series(order)
    return (a + a.map(BivarPoly.swap)) * (S * T)


def symmetrized_closed_form(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``st`` times the closed form, with ``e^{ux} - 1 = ux * unit`` cleared.

    The braces become
    ``st x^2/4 + e^x E_u / (U_1 U_s U_t) - (u/4)(e^{sx}+1)(e^{tx}+1) / (U_s U_t)``
    with ``u = s + t - 1``, ``U_v = (e^{vx} - 1)/(vx)`` and
    ``E_u = (e^{ux} - 1)/x``.
    """
    one = BivarPoly.const(1)
    u = S + T - 1
    ex = exp_series(one, order)
    esx = exp_series(S, order)
    etx = exp_series(T, order)
    unit1 = exp_series(one, order, minus_one=True, over_x=True)
    units = rescale(unit1, S)
    unitt = rescale(unit1, T)
    e_u = exp_series(u, order, minus_one=True, over_x=True)
    x2 = TruncatedSeries([0, 0, Fraction(1, 4)], order)
    first = x2 * (S * T)
    second = ex * e_u / (unit1 * units * unitt)
    third = (esx + 1) * (etx + 1) / (units * unitt) * (u * Fraction(1, 4))
    return first + second - third


def symmetrized_identity_check(order: int = DEFAULT_ORDER):
    """Compare the direct and closed-form symmetrizations coefficientwise.

    Returns ``(ok, mismatched orders, residual after t = 1 - s)``.
    """
    if order < 4:
        raise ValueError("order must be at least 4")
    direct = symmetrized_direct(order)
    closed = symmetrized_closed_form(order)
    bad = [n for n in range(order + 1) if direct[n] != closed[n]]
    residual = {n: direct[n].substitute_t() for n in range(order + 1)}
    residual = {n: r for n, r in residual.items() if r}
    return not bad, bad, residual


def even_lhs(n: int) -> BivarPoly:
    """``b_n sum_{i<n} s^i + sum_{2<=k<=n-2} b_k b_{n-k} (t^{k-1} - s^{n-k} t^{k-1})``."""
    b = bracket_coefficient
    p = BivarPoly({(i, 0): b(n) for i in range(n)})
    for k in range(2, n - 1):
        w = b(k) * b(n - k)
        p = p + BivarPoly({(0, k - 1): w, (n - k, k - 1): -w})
    return p


def even_rhs(n: int) -> BivarPoly:
    """``sum_{k<=n} b_k b_{n-k} (1 - s^{n-k}) t^{k-1}``."""
    b = bracket_coefficient
    p = BivarPoly()
    for k in range(n + 1):
        w = b(k) * b(n - k)
        p = p + BivarPoly.t(k - 1, w) - BivarPoly({(n - k, k - 1): w})
    return p


def even_n_congruence_check(n: int):
    """Both halves of the even-arity argument for one ``n``.

    Returns ``(congruent, symmetrization_vanishes)``: the two sides agree
    after multiplying by t and setting ``t = 1 - s``, and ``f + f^T`` of the
    left side vanishes under the same substitution.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    lhs, rhs = even_lhs(n) * T, even_rhs(n) * T
    congruent = lhs.substitute_t() == rhs.substitute_t()
    left = even_lhs(n)
    vanishes = not (left + left.swap()).substitute_t()
    return congruent, vanishes


def odd_n_polynomial(n: int) -> dict:
    """Coefficients of ``1 - ((1 - s^{n-2})/(1 - s)) t - t^{n-2}``."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    coeffs = {(0, 0): Fraction(1)}
    for i in range(n - 2):
        coeffs[(i, 1)] = coeffs.get((i, 1), 0) - 1
    coeffs[(0, n - 2)] = coeffs.get((0, n - 2), 0) - 1
    return coeffs


def bernoulli_from_series(order: int) -> list:
    """``B_n`` read off ``x/(e^x - 1)`` by series inversion (independent of the recurrence)."""
    quotient = exp_series(BivarPoly.const(1), order, minus_one=True, over_x=True)
    inv = quotient.inverse()
    out = []
    for n, c in enumerate(inv.coeffs):
        value = c.terms.get((0, 0), Fraction(0))
        out.append(value * math.factorial(n))
    return out
