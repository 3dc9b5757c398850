"""
One-parameter deformations p_n(x, t) = exp(t H(D)) p_n of a canonical system.

The deformed family has generating function exp(x Z(v) + t H(Z(v))) and
raising operator R = x W(D) + t H'(D) W(D); V(D) still lowers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fps
from .canonical import CanonicalSystem, _check_index
from .combinat import factorial
from .errors import OrderTooLow, UnsupportedDeformation
from .fps import Series
from .multivariate import MultiPoly
from .opcalc import apply_D_series, apply_dvf, operator_exp
from .poly import Poly
from .rational import Q

__all__ = [
    "ShefferDeformation",
    "deformed_p",
    "deformed_p_bivariate",
    "deformed_raise",
    "evolve",
]


@dataclass(frozen=True)
class ShefferDeformation:
    base: CanonicalSystem
    H: Series
    t: Fraction

    def __post_init__(self):
        if self.H.coeffs[0] != 0:
            raise UnsupportedDeformation("H(0) must be 0; constant terms are not renormalized")
        object.__setattr__(self, "t", Q(self.t))

    @property
    def order(self) -> int:
        return min(self.base.order, self.H.order)


def _weight_series(d: ShefferDeformation) -> Series:
    # exp(t H(Z(v)))
    order = d.order
    HZ = fps.compose(d.H.truncate(order), d.base.Z.truncate(order))
    return fps.exp(d.t * HZ)


def deformed_p(d: ShefferDeformation, n: int) -> Poly:
    """``n! [v^n] exp(x Z(v)) exp(t H(Z(v)))`` with t fixed."""
    _check_index(d.base, n)
    if n > d.order:
        raise OrderTooLow(f"H has order {d.H.order}, index {n} needs {n}", needed=n, have=d.H.order)
    E = _weight_series(d)
    Z = d.base.Z.truncate(d.order)
    nf = factorial(n)
    cs = []
    Zk = fps.constant(1, d.order)
    for k in range(n + 1):
        cs.append(Fraction(nf, factorial(k)) * (Zk * E).coeffs[n])
        Zk = Zk * Z
    return Poly(cs)


def deformed_p_bivariate(base: CanonicalSystem, H: Series, n: int) -> MultiPoly:
    """p_n(x, t) with ``t`` kept symbolic: a polynomial in ``(x, t)``.

    ``n! [v^n] sum_{k,j} x^k t^j Z^k H(Z)^j / (k! j!)``.
    """
    if H.coeffs[0] != 0:
        raise UnsupportedDeformation("H(0) must be 0")
    order = min(base.order, H.order)
    _check_index(base, n)
    Z = base.Z.truncate(order)
    HZ = fps.compose(H.truncate(order), Z)
    nf = factorial(n)
    terms = {}
    Zk = fps.constant(1, order)
    for k in range(n + 1):
        HZj = fps.constant(1, order)
        for j in range(n + 1):
            c = (Zk * HZj).coeffs[n]
            if c:
                terms[(k, j)] = c * Fraction(nf, factorial(k) * factorial(j))
            HZj = HZj * HZ
        Zk = Zk * Z
    return MultiPoly(2, terms)


def deformed_raise(d: ShefferDeformation, p: Poly) -> Poly:
    """``R p = x W(D) p + t H'(D) W(D) p``."""
    Hp = fps.derivative(d.H)
    return apply_dvf(d.base.W, p) + d.t * apply_D_series(Hp, apply_D_series(d.base.W, p))


def evolve(H: Series, t, p: Poly) -> Poly:
    """``exp(t H(D)) p`` as a terminating sum."""
    if H.coeffs[0] != 0:
        raise UnsupportedDeformation("H(0) must be 0")
    return operator_exp(H, Q(t), p)
