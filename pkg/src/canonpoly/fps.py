"""
Truncated formal power series over Q.

A :class:`Series` stores the coefficients of degrees ``0..order``; anything
above ``order`` is unknown rather than zero.  Binary operations therefore
return the smaller of the two orders and never pad.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import (
    BadConstantTerm,
    NonzeroConstantTerm,
    NotInvertible,
    OrderTooLow,
    ZeroConstantTerm,
)
from .rational import Q, from_wire, to_wire

__all__ = [
    "Series",
    "arith",
    "compose",
    "reciprocal",
    "comp_inverse",
    "lagrange_inverse",
    "derivative",
    "integral",
    "analytic",
    "exp",
    "log",
    "sqrt",
    "power",
    "split_constant",
    "variable",
    "constant",
    "exp_series",
    "geometric",
]


class Series:
    """Immutable truncated power series ``c_0 + c_1 v + ... + c_order v^order``."""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs, order: int | None = None):
        cs = [Q(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be non-negative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._order = order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if k > self._order:
            raise OrderTooLow(
                f"coefficient {k} requested from a series of order {self._order}",
                needed=k,
                have=self._order,
            )
        return self._coeffs[k]

    def __len__(self):
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def __repr__(self):
        terms = ", ".join(str(c) for c in self._coeffs)
        return f"Series([{terms}], order={self._order})"

    def truncate(self, order: int) -> Series:
        if order > self._order:
            raise OrderTooLow(
                f"cannot extend a series of order {self._order} to {order}",
                needed=order,
                have=self._order,
            )
        return Series(self._coeffs[: order + 1], order)

    def valuation(self) -> int | None:
        """Index of the first nonzero known coefficient, None if all known ones vanish."""
        for k, c in enumerate(self._coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __neg__(self):
        return Series([-c for c in self._coeffs], self._order)

    def __pos__(self):
        return self

    def _promote(self, other):
        if isinstance(other, Series):
            return other
        return constant(other, self._order)

    def __add__(self, other):
        try:
            return arith(self, self._promote(other), "add")
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return arith(self, self._promote(other), "sub")
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return arith(self, other, "mul")
        try:
            c = Q(other)
        except TypeError:
            return NotImplemented
        return Series([c * a for a in self._coeffs], self._order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * reciprocal(other)
        c = Q(other)
        return Series([a / c for a in self._coeffs], self._order)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("use power() for non-integer or negative exponents")
        result = constant(1, self._order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, g: Series) -> Series:
        return compose(self, g)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"order": self._order, "coeffs": [to_wire(c) for c in self._coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> Series:
        return cls([from_wire(s) for s in data["coeffs"]], int(data["order"]))

    @classmethod
    def from_json(cls, text: str) -> Series:
        return cls.from_dict(json.loads(text))


def variable(order: int) -> Series:
    """The series ``v`` itself."""
    return Series([0, 1], order)


def constant(c, order: int) -> Series:
    return Series([c], order)


def exp_series(order: int, scale=1) -> Series:
    """``exp(scale * v)``."""
    scale = Q(scale)
    cs, term = [], Fraction(1)
    for k in range(order + 1):
        cs.append(term)
        term = term * scale / (k + 1)
    return Series(cs, order)


def geometric(order: int, ratio=1) -> Series:
    """``1 / (1 - ratio*v)``."""
    ratio = Q(ratio)
    return Series([ratio**k for k in range(order + 1)], order)


def arith(a: Series, b: Series, op: str) -> Series:
    """Add, subtract or multiply two series at the smaller of their orders."""
    n = min(a.order, b.order)
    x, y = a.coeffs, b.coeffs
    if op == "add":
        return Series([x[k] + y[k] for k in range(n + 1)], n)
    if op == "sub":
        return Series([x[k] - y[k] for k in range(n + 1)], n)
    if op == "mul":
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            xi = x[i]
            if not xi:
                continue
            for j in range(n + 1 - i):
                if y[j]:
                    out[i + j] += xi * y[j]
        return Series(out, n)
    raise ValueError(f"unknown series operation {op!r}")


def compose(f: Series, g: Series) -> Series:
    """Truncation of ``f(g(v))``; ``g`` must have zero constant term."""
    if g.coeffs[0] != 0:
        raise NonzeroConstantTerm("inner series of a composition must vanish at 0")
    n = min(f.order, g.order)
    g = g.truncate(n)
    # Horner: f_n, then (.)*g + f_k downwards
    result = constant(f.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        result = result * g + f.coeffs[k]
    return result


def reciprocal(f: Series) -> Series:
    f0 = f.coeffs[0]
    if f0 == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    a = f.coeffs
    out = [1 / f0]
    for k in range(1, f.order + 1):
        s = sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out.append(-s / f0)
    return Series(out, f.order)


def derivative(f: Series) -> Series:
    if f.order == 0:
        raise OrderTooLow("derivative of an order-0 series is undetermined", needed=1, have=0)
    return Series([k * f.coeffs[k] for k in range(1, f.order + 1)], f.order - 1)


def integral(f: Series, c0=0) -> Series:
    """Antiderivative with constant term ``c0``; order goes up by one."""
    return Series([Q(c0)] + [f.coeffs[k] / (k + 1) for k in range(f.order + 1)], f.order + 1)


def _check_invertible(f: Series):
    if f.order < 1:
        raise NotInvertible("need at least the linear coefficient")
    if f.coeffs[0] != 0:
        raise NotInvertible("compositional inverse needs f(0) = 0")
    if f.coeffs[1] == 0:
        raise NotInvertible("compositional inverse needs f'(0) != 0")


def comp_inverse(f: Series) -> Series:
    """Compositional inverse, solved one degree at a time.

    Writing the unknown inverse as ``Z = v*g(v)``, the coefficient of ``v^n``
    in ``f(Z) = v`` reads ``a_1 Z_n + sum_{j>=2} a_j [v^(n-j)] g^j = 0``.  The
    powers ``g^j`` only need coefficients of ``g`` already fixed, and each one
    is extended by a single term per degree with the J.C.P. Miller recurrence.
    """
    _check_invertible(f)
    a = f.coeffs
    order = f.order
    g = [1 / a[1]]
    # powers[j] holds the known coefficients of g^j
    powers: dict[int, list[Fraction]] = {}
    for n in range(2, order + 1):
        total = Fraction(0)
        for j in range(2, n + 1):
            if j == n:
                powers[j] = [g[0] ** j]
            else:
                b = powers[j]
                k = len(b)  # == n - j
                s = sum(
                    (((j + 1) * i - k) * g[i] * b[k - i] for i in range(1, k + 1)),
                    Fraction(0),
                )
                b.append(s / (k * g[0]))
            if a[j]:
                total += a[j] * powers[j][n - j]
        g.append(-total / a[1])
    return Series([0] + g, order)


def lagrange_inverse(f: Series) -> Series:
    """Compositional inverse via ``[v^n] Z = (1/n) [z^(n-1)] (z/f(z))^n``.

    Independent of :func:`comp_inverse`; kept as a cross-check.
    """
    _check_invertible(f)
    order = f.order
    h = reciprocal(Series(f.coeffs[1:], order - 1))
    out = [Fraction(0)]
    hn = constant(1, order - 1)
    for n in range(1, order + 1):
        hn = hn * h
        out.append(hn.coeffs[n - 1] / n)
    return Series(out, order)


def power(f: Series, r) -> Series:
    """``f**r`` for rational ``r``, requiring ``f(0) = 1``."""
    r = Q(r)
    if f.coeffs[0] != 1:
        raise BadConstantTerm("rational powers need f(0) = 1; factor the constant out first")
    a = f.coeffs
    b = [Fraction(1)]
    for k in range(1, f.order + 1):
        s = sum((((r + 1) * i - k) * a[i] * b[k - i] for i in range(1, k + 1)), Fraction(0))
        b.append(s / k)
    return Series(b, f.order)


def sqrt(f: Series) -> Series:
    return power(f, Fraction(1, 2))


def exp(f: Series) -> Series:
    if f.coeffs[0] != 0:
        raise BadConstantTerm("exp needs f(0) = 0")
    a = f.coeffs
    e = [Fraction(1)]
    for k in range(1, f.order + 1):
        s = sum((i * a[i] * e[k - i] for i in range(1, k + 1)), Fraction(0))
        e.append(s / k)
    return Series(e, f.order)


def log(f: Series) -> Series:
    if f.coeffs[0] != 1:
        raise BadConstantTerm("log needs f(0) = 1")
    if f.order == 0:
        return constant(0, 0)
    return integral(derivative(f) * reciprocal(f))


def analytic(f: Series, fn: str, r=None) -> Series:
    """Apply one of the germs ``exp``, ``log``, ``sqrt`` or ``pow`` (with exponent ``r``)."""
    if fn == "exp":
        return exp(f)
    if fn == "log":
        return log(f)
    if fn == "sqrt":
        return sqrt(f)
    if fn == "pow":
        if r is None:
            raise ValueError("pow needs an exponent")
        return power(f, r)
    raise ValueError(f"unknown analytic function {fn!r}")


def split_constant(f: Series) -> tuple[Fraction, Series]:
    """Return ``(c, f/c)`` with ``c = f(0)``, so ``f/c`` has unit constant term."""
    c = f.coeffs[0]
    if c == 0:
        raise ZeroConstantTerm("nothing to factor out of a series vanishing at 0")
    return c, f / c
