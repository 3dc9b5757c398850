"""Integer combinatorics used across the package (exact, arbitrary size)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = [
    "factorial",
    "comb",
    "falling",
    "rising",
    "stirling1",
    "stirling2",
    "hermite_he_coeffs",
]


def falling(a, n: int):
    """Falling factorial ``a (a-1) ... (a-n+1)``; works for ints and Fractions."""
    out = 1
    for i in range(n):
        out *= a - i
    return out


def rising(a, n: int):
    out = 1
    for i in range(n):
        out *= a + i
    return out


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind, ``x^(n) = sum_k s(n,k) x^k``."""
    if n < 0 or k < 0:
        raise ValueError("negative index")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind via ``S(n,k) = k S(n-1,k) + S(n-1,k-1)``."""
    if n < 0 or k < 0:
        raise ValueError("negative index")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def hermite_he_coeffs(n: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``He_n(x, t)`` keyed by ``(power of x, power of t)``.

    ``exp(x z - t z^2/2) = sum_n z^n/n! He_n(x, t)``, so
    ``He_n = sum_k C(n,2k) (2k)!/(2^k k!) (-1)^k x^(n-2k) t^k``.
    """
    out = {}
    for k in range(n // 2 + 1):
        c = comb(n, 2 * k) * factorial(2 * k) // (2**k * factorial(k))
        out[(n - 2 * k, k)] = Fraction((-1) ** k * c)
    return out
