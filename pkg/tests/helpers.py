"""Exact matrix exponentials in a formal parameter t, truncated at t^order."""

from fractions import Fraction
from math import factorial

from canonpoly import fps
from canonpoly.multivariate import mat_mul


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def exp_t_coeffs(A, order):
    """Entry (i, j) is the list of t-coefficients of exp(tA)[i][j]."""
    n = len(A)
    out = [[[Fraction(0)] * (order + 1) for _ in range(n)] for _ in range(n)]
    P = _identity(n)
    for k in range(order + 1):
        if k:
            P = mat_mul(P, A)
        for i in range(n):
            for j in range(n):
                out[i][j][k] = Fraction(P[i][j]) / factorial(k)
    return out


def exp_t_series(A, order):
    """exp(tA) with each entry a truncated Series in t."""
    return [[fps.Series(cs, order) for cs in row] for row in exp_t_coeffs(A, order)]


def series_rows_to_coeffs(rows):
    return [[list(s.coeffs) for s in row] for row in rows]
