"""
Canonical polynomial systems built from a symbol V.

Given V with V(0) = 0 and V'(0) != 0, the system carries Z (the compositional
inverse), W = 1/V' and Z'.  The p-polynomials come from the exponential
generating function exp(x Z(v)) = sum v^n/n! p_n(x); the q-polynomials of the
inverse system from exp(y V(z)).  Coefficients are read off powers of Z (or
V): p_{nk} = n!/k! [v^n] Z(v)^k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import fps
from .combinat import factorial, falling, stirling2
from .errors import NotCanonical, OrderTooLow
from .fps import Series
from .poly import Poly
from .rational import Q, from_wire, to_wire

__all__ = [
    "CanonicalSystem",
    "CoeffMatrix",
    "GUARD",
    "default_order",
    "new_system",
    "p_poly",
    "q_poly",
    "p_matrix",
    "q_matrix",
    "umbral_compose",
    "compose_systems",
    "poisson_subordinate",
    "inverse_system",
    "poisson_subordinator",
    "x_action",
    "standard_system",
]

# extra terms expanded past the highest index a caller asks for
GUARD = 2


def default_order(n_max: int) -> int:
    """Truncation order used when a caller wants indices up to ``n_max``."""
    return n_max + 1 + GUARD


@dataclass(frozen=True, eq=False)
class CanonicalSystem:
    """Bundle (V, Z, V', Z', W) for one canonical symbol.

    ``order`` is the truncation order of V and Z.  V', W and Z' are derived by
    differentiation and so are known to ``order - 1``.
    """

    V: Series
    Z: Series
    Vprime: Series
    Zprime: Series
    W: Series

    @property
    def order(self) -> int:
        return self.V.order

    @cached_property
    def _z_powers(self) -> list[Series]:
        return _powers(self.Z)

    @cached_property
    def _v_powers(self) -> list[Series]:
        return _powers(self.V)

    def __eq__(self, other):
        if not isinstance(other, CanonicalSystem):
            return NotImplemented
        return self.V == other.V

    def __hash__(self):
        return hash(self.V)


def _powers(f: Series) -> list[Series]:
    out = [fps.constant(1, f.order)]
    for _ in range(f.order):
        out.append(out[-1] * f)
    return out


def new_system(V: Series) -> CanonicalSystem:
    if V.order < 2:
        raise OrderTooLow("a canonical symbol needs order >= 2", needed=2, have=V.order)
    if V.coeffs[0] != 0:
        raise NotCanonical("V(0) must be 0")
    if V.coeffs[1] == 0:
        raise NotCanonical("V'(0) must be nonzero")
    Z = fps.comp_inverse(V)
    Vp = fps.derivative(V)
    W = fps.reciprocal(Vp)
    Zp = fps.reciprocal(fps.compose(Vp, Z.truncate(Vp.order)))
    return CanonicalSystem(V=V, Z=Z, Vprime=Vp, Zprime=Zp, W=W)


def standard_system(order: int) -> CanonicalSystem:
    return new_system(fps.variable(order))


def poisson_subordinator(order: int) -> CanonicalSystem:
    """System with ``Z(v) = e^v - 1`` (symbol ``log(1+z)``), whose P-matrix is ``S(n, m)``.

    This is the dual of the Poisson system; composing with it is Poisson
    subordination.
    """
    return new_system(fps.log(fps.Series([1, 1], order)))


def inverse_system(sys: CanonicalSystem) -> CanonicalSystem:
    """The dual system whose symbol is Z; its p-polynomials are the q_n of ``sys``."""
    return new_system(sys.Z)


def _check_index(sys: CanonicalSystem, n: int):
    if n < 0:
        raise ValueError("index must be non-negative")
    if n > sys.order:
        raise OrderTooLow(
            f"index {n} needs order {n}, system has {sys.order}", needed=n, have=sys.order
        )


def _extract(powers: list[Series], n: int) -> Poly:
    nf = factorial(n)
    return Poly([Fraction(nf, factorial(k)) * powers[k].coeffs[n] for k in range(n + 1)])


def p_poly(sys: CanonicalSystem, n: int) -> Poly:
    _check_index(sys, n)
    return _extract(sys._z_powers, n)


def q_poly(sys: CanonicalSystem, n: int) -> Poly:
    _check_index(sys, n)
    return _extract(sys._v_powers, n)


@dataclass(frozen=True)
class CoeffMatrix:
    """Lower-triangular coefficient matrix; ``entries[n]`` has ``n+1`` items."""

    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_polys(cls, polys) -> CoeffMatrix:
        return cls(tuple(tuple(p[k] for k in range(n + 1)) for n, p in enumerate(polys)))

    @classmethod
    def from_square(cls, rows) -> CoeffMatrix:
        return cls(tuple(tuple(Q(rows[n][k]) for k in range(n + 1)) for n in range(len(rows))))

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    def __getitem__(self, nk):
        n, k = nk
        if k > n:
            return Fraction(0)
        return self.entries[n][k]

    def square(self) -> list[list[Fraction]]:
        size = self.n_rows
        return [[self[n, k] for k in range(size)] for n in range(size)]

    def __matmul__(self, other: CoeffMatrix) -> CoeffMatrix:
        if self.n_rows != other.n_rows:
            raise ValueError("matrix sizes differ")
        rows = []
        for n in range(self.n_rows):
            rows.append(
                tuple(
                    sum((self[n, m] * other[m, k] for m in range(k, n + 1)), Fraction(0))
                    for k in range(n + 1)
                )
            )
        return CoeffMatrix(tuple(rows))

    def is_identity(self) -> bool:
        return all(self[n, k] == (1 if n == k else 0) for n in range(self.n_rows) for k in range(n + 1))

    @classmethod
    def identity(cls, size: int) -> CoeffMatrix:
        return cls(tuple(tuple(Fraction(int(n == k)) for k in range(n + 1)) for n in range(size)))

    def to_dict(self) -> dict:
        return {"rows": self.n_rows, "entries": [[to_wire(c) for c in row] for row in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> CoeffMatrix:
        entries = tuple(tuple(from_wire(s) for s in row) for row in data["entries"])
        if len(entries) != data["rows"]:
            raise ValueError("row count does not match entries")
        return cls(entries)

    @classmethod
    def from_json(cls, text: str) -> CoeffMatrix:
        return cls.from_dict(json.loads(text))

    def to_csv(self, as_float: bool = False) -> str:
        size = self.n_rows
        lines = []
        for n in range(size):
            lines.append(",".join(_num(self[n, k], as_float) for k in range(n + 1)))
        return "\n".join(lines) + "\n"

    def to_latex(self, as_float: bool = False) -> str:
        size = self.n_rows
        lines = [r"\left(\begin{array}{" + "r" * size + "}"]
        for n in range(size):
            cells = [_latex_num(self[n, k], as_float) if k <= n else "" for k in range(size)]
            lines.append(" & ".join(cells) + r" \\")
        lines.append(r"\end{array}\right)")
        return "\n".join(lines) + "\n"


def _num(q: Fraction, as_float: bool) -> str:
    if as_float:
        return repr(float(q))
    return str(q)


def _latex_num(q: Fraction, as_float: bool) -> str:
    if as_float:
        return repr(float(q))
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def p_matrix(sys: CanonicalSystem, N: int) -> CoeffMatrix:
    _check_index(sys, N)
    return CoeffMatrix.from_polys([p_poly(sys, n) for n in range(N + 1)])


def q_matrix(sys: CanonicalSystem, N: int) -> CoeffMatrix:
    _check_index(sys, N)
    return CoeffMatrix.from_polys([q_poly(sys, n) for n in range(N + 1)])


def umbral_compose(sys: CanonicalSystem, f: Poly) -> Poly:
    """``f(Y) 1``: replace each ``x^m`` in ``f`` by ``p_m``."""
    if f.degree > sys.order:
        raise OrderTooLow("polynomial degree exceeds system order", needed=f.degree, have=sys.order)
    result = Poly()
    for m, c in enumerate(f.coeffs):
        if c:
            result = result + c * p_poly(sys, m)
    return result


def compose_systems(sys1: CanonicalSystem, sys2: CanonicalSystem, sigma, gamma) -> CanonicalSystem:
    """System with ``Z12(v) = Z1(sigma Z2(gamma v))``, i.e. ``V12 = V2(V1(z)/sigma)/gamma``."""
    sigma, gamma = Q(sigma), Q(gamma)
    if sigma == 0 or gamma == 0:
        raise ValueError("scale factors must be nonzero")
    order = min(sys1.order, sys2.order)
    V1 = sys1.V.truncate(order)
    V2 = sys2.V.truncate(order)
    V12 = fps.compose(V2, V1 / sigma) / gamma
    result = new_system(V12)
    inner = fps.compose(sys2.Z.truncate(order), gamma * fps.variable(order)) * sigma
    Z12 = fps.compose(sys1.Z.truncate(order), inner)
    if Z12 != result.Z:
        raise NotCanonical("composite inverse disagrees with the composed symbol")
    return result


def poisson_subordinate(sys1: CanonicalSystem, sigma, gamma, n: int) -> Poly:
    """``gamma^n sum_m S(n,m) sigma^m p_m^(1)(x)``.

    Same polynomials as ``p_poly(compose_systems(sys1, poisson_subordinator(k), sigma, gamma), n)``.
    """
    sigma, gamma = Q(sigma), Q(gamma)
    _check_index(sys1, n)
    result = Poly()
    for m in range(n + 1):
        s = stirling2(n, m)
        if s:
            result = result + (s * sigma**m) * p_poly(sys1, m)
    return result * gamma**n


def x_action(sys: CanonicalSystem, n: int) -> Poly:
    """Multiplication by x on p_n, expanded through ``x = Y Z'(V(D))^{-1}``.

    With ``1/Z'(v) = sum_k c_k v^k`` and ``V(D)^k p_n = n^(k) p_{n-k}`` this is
    ``sum_k c_k n^(k) p_{n+1-k}``; the result should equal ``x * p_n``.
    """
    _check_index(sys, n + 1)
    c = fps.reciprocal(sys.Zprime)
    if c.order < n:
        raise OrderTooLow("Z' is too short for this index", needed=n + 1, have=sys.order)
    result = Poly()
    for k in range(n + 1):
        if c.coeffs[k]:
            result = result + (c.coeffs[k] * falling(n, k)) * p_poly(sys, n + 1 - k)
    return result
