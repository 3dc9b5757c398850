"""
The six named systems, their closed forms, and recurrence oracles.

``build`` produces the symbol V by series arithmetic.  The ``oracle_*``
functions generate the same polynomials from three-term or differential
recurrences only, with no series machinery, so the two routes check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fps
from .canonical import CanonicalSystem, new_system
from .combinat import comb, factorial, falling, hermite_he_coeffs, stirling1, stirling2
from .errors import IndexOutOfRange, MissingParam, UnexpectedParam, ZeroAlpha
from .fps import Series
from .poly import X, Poly
from .rational import Q

__all__ = [
    "NAMES",
    "NamedSystem",
    "build",
    "symbol",
    "oracle_p",
    "oracle_q",
    "classical",
    "touchard",
    "bessel_theta",
    "bessel_p",
    "hermite_q",
    "laguerre_p_closed",
    "laguerre_q_closed",
    "arcsinh_p_closed",
    "arcsinh_q_product",
    "tanh_p_krawtchouk",
    "tanh_q_subordinate",
    "gegenbauer_p_closed",
    "gegenbauer_q_closed",
]

NAMES = ("poisson", "laguerre", "hermite_bessel", "arcsinh", "tanh", "gegenbauer")


@dataclass(frozen=True)
class NamedSystem:
    name: str
    param: Fraction | None
    system: CanonicalSystem


def _check_param(name: str, param):
    if name not in NAMES:
        raise ValueError(f"unknown system {name!r}; choose from {', '.join(NAMES)}")
    if name == "gegenbauer":
        if param is None:
            raise MissingParam("gegenbauer needs the parameter alpha")
        param = Q(param)
        if param == 0:
            raise ZeroAlpha("alpha = 0 makes V'(0) = 2 alpha vanish")
        return param
    if param is not None:
        raise UnexpectedParam(f"{name} takes no parameter")
    return None


def symbol(name: str, param=None, order: int = 8) -> Series:
    """Series expansion of the named symbol V(z) to ``order``."""
    alpha = _check_param(name, param)
    z = fps.variable(order)
    if name == "poisson":
        return fps.exp_series(order) - 1
    if name == "laguerre":
        return z * fps.geometric(order)
    if name == "hermite_bessel":
        return z - z * z / 2
    if name == "arcsinh":
        # integral of (1 + z^2)^(-1/2)
        integrand = fps.power(fps.Series([1, 0, 1], order - 1), Fraction(-1, 2))
        return fps.integral(integrand)
    if name == "tanh":
        e2 = fps.exp_series(order, 2)
        return (e2 - 1) * fps.reciprocal(e2 + 1)
    # gegenbauer
    return -fps.log(fps.Series([1, -2 * alpha, 1], order))


def build(name: str, param=None, order: int = 8) -> NamedSystem:
    if order < 2:
        raise ValueError("order must be at least 2")
    alpha = _check_param(name, param)
    return NamedSystem(name, alpha, new_system(symbol(name, alpha, order)))


def _v1(name: str, alpha) -> Fraction:
    # V'(0) for each symbol
    return 2 * alpha if name == "gegenbauer" else Fraction(1)


def _recur(seeds, step, n: int) -> Poly:
    seq = list(seeds)
    while len(seq) <= n:
        seq.append(step(len(seq) - 1, seq))
    return seq[n]


def oracle_p(name: str, param=None, n: int = 0) -> Poly:
    """p_n from the system's own recurrence."""
    alpha = _check_param(name, param)
    if n < 0:
        raise IndexOutOfRange("n must be non-negative")
    seeds = [Poly([1]), X / _v1(name, alpha)]
    if name == "poisson":
        step = lambda m, s: (X - m) * s[m]
    elif name == "laguerre":
        step = lambda m, s: (X - 2 * m) * s[m] - m * (m - 1) * s[m - 1]
    elif name == "hermite_bessel":
        step = lambda m, s: (2 * m - 1) * s[m] + X * X * s[m - 1]
    elif name == "arcsinh":
        # Bessel operator two steps at a time: p_{m+2} = x^2 p_m + (x d/dx)^2 p_m
        step = lambda m, s: X * X * s[m - 1] + _xd(_xd(s[m - 1]))
    elif name == "tanh":
        step = lambda m, s: X * s[m] + m * (m - 1) * s[m - 1]
    else:
        return gegenbauer_p_closed(alpha, n)
    return _recur(seeds, step, n)


def oracle_q(name: str, param=None, n: int = 0) -> Poly:
    """q_n from the dual recurrence."""
    alpha = _check_param(name, param)
    if n < 0:
        raise IndexOutOfRange("n must be non-negative")
    Y = X
    seeds = [Poly([1]), Y * _v1(name, alpha)]
    if name == "poisson":
        step = lambda m, s: Y * s[m] + Y * s[m].derivative()
    elif name == "laguerre":
        step = lambda m, s: (Y + 2 * m) * s[m] - m * (m - 1) * s[m - 1]
    elif name == "hermite_bessel":
        step = lambda m, s: Y * (s[m] - m * s[m - 1])
    elif name == "arcsinh":
        # q_{m+2} = (y^2 - m^2) q_m, written with index m+1 -> m-1
        step = lambda m, s: (Y * Y - (m - 1) ** 2) * s[m - 1]
    elif name == "tanh":
        step = lambda m, s: Y * (s[m] - s[m].derivative(2))
    else:
        step = lambda m, s: 2 * alpha * (Y + m) * s[m] - m * (2 * Y + m - 1) * s[m - 1]
    return _recur(seeds, step, n)


def _xd(p: Poly) -> Poly:
    # x d/dx multiplies the coefficient of x^k by k
    return Poly([k * c for k, c in enumerate(p.coeffs)])


# closed forms -------------------------------------------------------------


def touchard(n: int) -> Poly:
    return Poly([stirling2(n, k) for k in range(n + 1)])


def falling_poly(a: Poly, n: int) -> Poly:
    """``a (a-1) ... (a-n+1)`` for a polynomial ``a``."""
    out = Poly([1])
    for i in range(n):
        out = out * (a - i)
    return out


def bessel_theta(n: int) -> Poly:
    """Bessel polynomial ``theta_n(x) = sum_k (n+k)!/((n-k)! k! 2^k) x^(n-k)``."""
    if n < 0:
        raise IndexOutOfRange("n must be non-negative")
    cs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        cs[n - k] = Fraction(factorial(n + k), factorial(n - k) * factorial(k) * 2**k)
    return Poly(cs)


def bessel_p(n: int) -> Poly:
    """``x theta_{n-1}(x) = sum_k Gamma(n+k)/(Gamma(n-k) k!) x^(n-k)/2^k``."""
    if n == 0:
        return Poly([1])
    cs = [Fraction(0)] * (n + 1)
    for k in range(n):
        cs[n - k] = Fraction(factorial(n + k - 1), factorial(n - k - 1) * factorial(k) * 2**k)
    return Poly(cs)


def hermite_q(n: int) -> Poly:
    """``He_n(y, y)``."""
    cs = [Fraction(0)] * (n + 1)
    for (i, j), c in hermite_he_coeffs(n).items():
        cs[i + j] += c
    return Poly(cs)


def laguerre_p_closed(n: int) -> Poly:
    """``(-1)^n n! L_n^(-1)(x)`` with ``L_n^(a)(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!``."""
    if n == 0:
        return Poly([1])
    cs = [Fraction(0)] + [
        Fraction((-1) ** (n + k) * factorial(n) * comb(n - 1, n - k), factorial(k))
        for k in range(1, n + 1)
    ]
    return Poly(cs)


def laguerre_q_closed(n: int) -> Poly:
    """``sum_{k>=1} C(n,k) Gamma(n)/Gamma(k) y^k``."""
    if n == 0:
        return Poly([1])
    return Poly([0] + [Fraction(comb(n, k) * factorial(n - 1), factorial(k - 1)) for k in range(1, n + 1)])


def arcsinh_p_closed(n: int) -> Poly:
    """``sum_j C(n,j) (-1)^j T_{n-j}(x/2) T_j(-x/2)`` with Touchard T."""
    half = X / 2
    result = Poly()
    for j in range(n + 1):
        result = result + comb(n, j) * (-1) ** j * touchard(n - j)(half) * touchard(j)(-half)
    return result


def arcsinh_q_product(n: int) -> Poly:
    if n == 0:
        return Poly([1])
    if n % 2:
        out = X
        for k in range((n - 3) // 2 + 1):
            out = out * (X * X - (2 * k + 1) ** 2)
        return out
    out = Poly([1])
    for k in range((n - 2) // 2 + 1):
        out = out * (X * X - (2 * k) ** 2)
    return out


def tanh_p_krawtchouk(n: int) -> Poly:
    """``sum_k C(n,k) (-1)^k (x/2)^(n-k) (-x/2)^(k)`` with falling factorial powers."""
    half = X / 2
    result = Poly()
    for k in range(n + 1):
        result = result + comb(n, k) * (-1) ** k * falling_poly(half, n - k) * falling_poly(-half, k)
    return result


def tanh_q_subordinate(n: int) -> Poly:
    """``sum_m S(n,m) 2^(n-m) p_m^Laguerre(y)`` from the Laguerre recurrence."""
    result = Poly()
    for m in range(n + 1):
        result = result + stirling2(n, m) * 2 ** (n - m) * oracle_p("laguerre", None, m)
    return result


def gegenbauer_p_closed(alpha, n: int) -> Poly:
    """``sum_k S(n,k) (-1)^(n-k) (2 alpha^2)^(-k) p_k^Bessel(alpha x)``.

    The Bessel polynomials come from their recurrence, not from a series.
    """
    alpha = Q(alpha)
    result = Poly()
    for k in range(n + 1):
        s = stirling2(n, k)
        if s:
            coef = Fraction(s * (-1) ** (n - k)) / (2 * alpha**2) ** k
            result = result + coef * oracle_p("hermite_bessel", None, k).scale_var(alpha)
    return result


def gegenbauer_q_closed(alpha, n: int) -> Poly:
    """``n! C_n^(y)(alpha)`` as a polynomial in the Gegenbauer parameter ``y``.

    ``C_n^(l)(a) = sum_k (-1)^k (l)_(n-k) (2a)^(n-2k) / (k! (n-2k)!)`` with the
    rising factorial ``(l)_m``.
    """
    alpha = Q(alpha)
    result = Poly()
    for k in range(n // 2 + 1):
        coef = Fraction((-1) ** k * factorial(n), factorial(k) * factorial(n - 2 * k)) * (2 * alpha) ** (n - 2 * k)
        result = result + coef * _rising_poly(n - k)
    return result


def _rising_poly(m: int) -> Poly:
    out = Poly([1])
    for i in range(m):
        out = out * (X + i)
    return out


def classical(name: str, *args):
    """Named classical numbers and polynomials.

    ``stirling1(n, k)``, ``stirling2(n, k)``, ``touchard(n)``,
    ``bessel_theta(n)``, ``hermite_He(n)`` (a dict keyed by powers of
    ``(x, t)``), ``falling_factorial(a, n)``.
    """
    for a in args[1:] if name == "falling_factorial" else args:
        if isinstance(a, int) and a < 0:
            raise IndexOutOfRange(f"negative index in {name}{args}")
    if name == "stirling1":
        n, k = args
        return Fraction(stirling1(n, k)) if k <= n else Fraction(0)
    if name == "stirling2":
        n, k = args
        return Fraction(stirling2(n, k)) if k <= n else Fraction(0)
    if name == "touchard":
        return touchard(*args)
    if name == "bessel_theta":
        return bessel_theta(*args)
    if name == "hermite_He":
        (n,) = args
        return hermite_he_coeffs(n)
    if name == "falling_factorial":
        a, n = args
        if isinstance(a, Poly):
            return falling_poly(a, n)
        return Fraction(falling(Q(a), n))
    raise ValueError(f"unknown classical family {name!r}")


def hermite_eval(n: int, x, t) -> Poly | Fraction:
    """Evaluate ``He_n(x, t)`` where ``x`` and ``t`` may be Polys or numbers."""
    result = Poly()
    for (i, j), c in hermite_he_coeffs(n).items():
        result = result + c * _pow(x, i) * _pow(t, j)
    return result


def _pow(a, k):
    if isinstance(a, Poly):
        return a**k
    return Poly([Q(a) ** k])


__all__ += ["falling_poly", "hermite_eval"]
