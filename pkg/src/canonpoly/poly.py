"""Dense univariate polynomials with Fraction coefficients."""

from __future__ import annotations

import json
from fractions import Fraction

from .rational import Q, from_wire, to_wire

__all__ = ["Poly", "X"]


class Poly:
    """Immutable polynomial; ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are always trimmed, so the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Poly([other])._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"Poly({self.pretty()!r})"

    def __neg__(self):
        return Poly([-c for c in self._coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly([other])
            except TypeError:
                return NotImplemented
        a, b = self._coeffs, other._coeffs
        n = max(len(a), len(b))
        return Poly([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly([other])
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self._coeffs, other._coeffs
            if not a or not b:
                return Poly()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(out)
        try:
            c = Q(other)
        except TypeError:
            return NotImplemented
        return Poly([c * a for a in self._coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Q(other)
        return Poly([a / c for a in self._coeffs])

    def __pow__(self, n: int):
        result = Poly([1])
        for _ in range(n):
            result = result * self
        return result

    def shift_up(self, k: int = 1) -> Poly:
        """Multiply by ``x**k``."""
        if not self._coeffs:
            return self
        return Poly([0] * k + list(self._coeffs))

    def derivative(self, k: int = 1) -> Poly:
        cs = list(self._coeffs)
        for _ in range(k):
            cs = [i * cs[i] for i in range(1, len(cs))]
        return Poly(cs)

    def __call__(self, x):
        """Evaluate at a number, or substitute a polynomial."""
        if isinstance(x, Poly):
            result = Poly()
            for c in reversed(self._coeffs):
                result = result * x + c
            return result
        x = Q(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def scale_var(self, a) -> Poly:
        """``p(a*x)``."""
        a = Q(a)
        return Poly([c * a**k for k, c in enumerate(self._coeffs)])

    def pretty(self, var: str = "x", latex: bool = False, as_float: bool = False) -> str:
        """Descending-power rendering, e.g. ``x^4 - 6 x^3 + 11 x^2 - 6 x``."""
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                mono = ""
            elif k == 1:
                mono = var
            else:
                mono = f"{var}^{{{k}}}" if latex else f"{var}^{k}"
            if mono and mag == 1:
                body = mono
            else:
                num = _fmt_num(mag, latex, as_float)
                body = f"{num} {mono}" if mono else num
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_list(self) -> list[str]:
        return [to_wire(c) for c in self._coeffs]

    @classmethod
    def from_list(cls, items) -> Poly:
        return cls([from_wire(s) for s in items])

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> Poly:
        return cls.from_list(json.loads(text))


def _fmt_num(q: Fraction, latex: bool, as_float: bool) -> str:
    if as_float:
        return repr(float(q))
    if q.denominator == 1:
        return str(q.numerator)
    if latex:
        return f"\\frac{{{q.numerator}}}{{{q.denominator}}}"
    return f"{q.numerator}/{q.denominator}"


X = Poly([0, 1])
