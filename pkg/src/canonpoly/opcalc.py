"""
Operators on polynomials built from D = d/dx and multiplication by x.

A function of D given by a truncated series acts on a polynomial of degree d
through its first d+1 coefficients only, so every action here is finite.
Order requirements are checked up front and reported with the order needed.
"""

from __future__ import annotations

from .errors import OrderTooLow
from .fps import Series
from .poly import Poly

__all__ = [
    "apply_D_series",
    "apply_dvf",
    "commutator_on_poly",
    "iterate_dvf",
    "operator_exp",
    "require_order",
]


def require_order(f: Series, degree: int, what: str = "series") -> None:
    if f.order < degree:
        raise OrderTooLow(
            f"{what} has order {f.order}, need at least {degree}", needed=degree, have=f.order
        )


def apply_D_series(f: Series, p: Poly) -> Poly:
    """``f(D) p = sum_k f_k D^k p``."""
    if not p:
        return p
    require_order(f, p.degree)
    result = Poly()
    term = p
    for k in range(p.degree + 1):
        if f.coeffs[k]:
            result = result + f.coeffs[k] * term
        term = term.derivative()
    return result


def apply_dvf(W: Series, p: Poly) -> Poly:
    """The dual vector field ``Y = x W(D)`` applied to ``p``."""
    return apply_D_series(W, p).shift_up()


def iterate_dvf(W: Series, n: int, start: Poly | None = None) -> list[Poly]:
    """``[p, Yp, Y^2 p, ..., Y^n p]`` starting from ``start`` (default 1)."""
    p = Poly([1]) if start is None else start
    out = [p]
    for _ in range(n):
        p = apply_dvf(W, p)
        out.append(p)
    return out


def commutator_on_poly(f: Series, W: Series, p: Poly) -> Poly:
    """``[f(D), x W(D)] p = f(D)(Y p) - Y(f(D) p)``."""
    if p:
        require_order(W, p.degree, "W")
        require_order(f, p.degree + 1)
    return apply_D_series(f, apply_dvf(W, p)) - apply_dvf(W, apply_D_series(f, p))


def operator_exp(H: Series, t, p: Poly) -> Poly:
    """``exp(t H(D)) p`` for ``H(0) = 0``.

    Each application of ``H(D)`` lowers the degree by at least one, so the
    exponential series stops after at most ``deg p`` terms.
    """
    if H.coeffs[0] != 0:
        raise ValueError("operator exponential needs H(0) = 0 to terminate")
    result = p
    term = p
    k = 0
    while term:
        k += 1
        term = apply_D_series(H, term) * t / k
        result = result + term
    return result
