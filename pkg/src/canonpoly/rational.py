"""Exact rational helpers: coercion and the ``"num/den"`` wire form."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Q", "to_wire", "from_wire", "parse_rational_list"]


def Q(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction.

    Floats are refused: nothing in this library is allowed to go inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def to_wire(q: Fraction) -> str:
    # always carries the denominator, even when it is 1
    return f"{q.numerator}/{q.denominator}"


def from_wire(s: str) -> Fraction:
    return Fraction(s)


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse ``"0, 1, -1/2"`` into Fractions."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ValueError("empty coefficient list")
    return [Fraction(p) for p in parts]
