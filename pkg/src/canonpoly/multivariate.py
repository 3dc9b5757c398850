"""
Multivariate canonical systems, symmetric tensor powers and the map Gamma(A).

Multi-indices are tuples of non-negative ints.  Wherever monomials index the
rows of a matrix they are listed in graded lexicographic order: by total
degree, then lexicographically with larger leading exponents first, so the
degree-2 basis in two variables is ``x1^2, x1 x2, x2^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, prod

from . import fps
from .combinat import hermite_he_coeffs
from .errors import OrderTooLow, SingularJacobian
from .fps import Series
from .rational import Q, from_wire, to_wire

__all__ = [
    "MultiIndex",
    "MultiSeries",
    "MultiPoly",
    "MvSystem",
    "grlex_key",
    "monomials",
    "mat_inv",
    "mat_mul",
    "mv_system",
    "mv_exp_extract",
    "mv_p_poly",
    "mv_q_poly",
    "mv_apply_Y",
    "mv_apply_series",
    "mv_q_factorization_check",
    "mv_hermite_bessel",
    "mv_linear",
    "s_closed_form",
    "sym_power",
    "gamma_map",
    "matrix_to_dict",
]

MultiIndex = tuple


def grlex_key(e: tuple) -> tuple:
    return (sum(e), tuple(-a for a in e))


def monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent vectors of total degree ``degree`` in graded-lex order."""
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(out, key=grlex_key)


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mfact(e: tuple) -> int:
    return prod(factorial(a) for a in e)


class _Terms:
    """Shared dict-of-monomials arithmetic.  Zero coefficients are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length does not match number of variables")
            c = Q(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    def coeff(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _combine(self, other, sign):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + sign * c
        return out

    def _product(self, other, cap=None):
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if cap is not None and d1 + sum(e2) > cap:
                    continue
                e = _add_exp(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return out

    def _sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))


class MultiPoly(_Terms):
    """Polynomial in ``nvars`` variables."""

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.pretty()!r})"

    def __bool__(self):
        return bool(self.terms)

    @classmethod
    def one(cls, nvars: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly(self.nvars, {(0,) * self.nvars: other})
        return MultiPoly(self.nvars, self._combine(other, 1))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly(self.nvars, {(0,) * self.nvars: other})
        return MultiPoly(self.nvars, self._combine(other, -1))

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return MultiPoly(self.nvars, self._product(other))
        c = Q(other)
        return MultiPoly(self.nvars, {e: c * a for e, a in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def times_var(self, i: int) -> MultiPoly:
        return MultiPoly(
            self.nvars,
            {e[:i] + (e[i] + 1,) + e[i + 1 :]: c for e, c in self.terms.items()},
        )

    def partial(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c * e[i]
        return MultiPoly(self.nvars, out)

    def pretty(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), grlex_key(kv[0]))):
            mono = " ".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag} {mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def to_list(self) -> list[dict]:
        return [{"exp": list(e), "coef": to_wire(c)} for e, c in self._sorted_items()]

    @classmethod
    def from_list(cls, items, nvars: int | None = None) -> MultiPoly:
        if nvars is None:
            if not items:
                raise ValueError("cannot infer nvars from an empty list")
            nvars = len(items[0]["exp"])
        return cls(nvars, {tuple(it["exp"]): from_wire(it["coef"]) for it in items})

    def to_json(self) -> str:
        return json.dumps(self.to_list())


class MultiSeries(_Terms):
    """Multivariate power series truncated at total degree ``order``."""

    __slots__ = ("order",)

    def __init__(self, nvars: int, terms=None, order: int = 0):
        super().__init__(nvars, terms)
        self.order = order
        self.terms = {e: c for e, c in self.terms.items() if sum(e) <= order}

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.order, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiSeries({dict(self._sorted_items())}, order={self.order})"

    @classmethod
    def constant(cls, nvars: int, c, order: int) -> MultiSeries:
        return cls(nvars, {(0,) * nvars: c}, order)

    @classmethod
    def var(cls, nvars: int, i: int, order: int, c=1) -> MultiSeries:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c}, order)

    def truncate(self, order: int) -> MultiSeries:
        if order > self.order:
            raise OrderTooLow("cannot extend a truncated series", needed=order, have=self.order)
        return MultiSeries(self.nvars, self.terms, order)

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def __neg__(self):
        return MultiSeries(self.nvars, {e: -c for e, c in self.terms.items()}, self.order)

    def _lift(self, other):
        if isinstance(other, MultiSeries):
            return other
        return MultiSeries.constant(self.nvars, other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        return MultiSeries(self.nvars, self._combine(other, 1), min(self.order, other.order))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return MultiSeries(self.nvars, self._combine(other, -1), min(self.order, other.order))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiSeries):
            n = min(self.order, other.order)
            return MultiSeries(self.nvars, self._product(other, cap=n), n)
        c = Q(other)
        return MultiSeries(self.nvars, {e: c * a for e, a in self.terms.items()}, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Q(other))

    def partial(self, i: int) -> MultiSeries:
        if self.order == 0:
            raise OrderTooLow("derivative of an order-0 series", needed=1, have=0)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c * e[i]
        return MultiSeries(self.nvars, out, self.order - 1)

    def linear_part(self) -> list[Fraction]:
        return [self.coeff(tuple(int(j == i) for j in range(self.nvars))) for i in range(self.nvars)]

    def apply_univariate(self, f: Series) -> MultiSeries:
        """``f(self)``; ``self`` must vanish at the origin."""
        if self.constant_term():
            raise ValueError("inner series must vanish at the origin")
        n = min(self.order, f.order)
        g = self.truncate(n)
        result = MultiSeries.constant(self.nvars, f.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + f.coeffs[k]
        return result

    def substitute(self, inner: list[MultiSeries]) -> MultiSeries:
        """``self(inner_1, ..., inner_N)``; each inner series must vanish at 0."""
        if len(inner) != self.nvars:
            raise ValueError("need one inner series per variable")
        if any(g.constant_term() for g in inner):
            raise ValueError("inner series must vanish at the origin")
        m = inner[0].nvars
        n = min([self.order] + [g.order for g in inner])
        pows = []
        for g in inner:
            g = g.truncate(n)
            ps = [MultiSeries.constant(m, 1, n)]
            for _ in range(n):
                ps.append(ps[-1] * g)
            pows.append(ps)
        result = MultiSeries(m, {}, n)
        for e, c in self.terms.items():
            term = MultiSeries.constant(m, c, n)
            for i, a in enumerate(e):
                if a:
                    term = term * pows[i][a]
            result = result + term
        return result


# small exact linear algebra ------------------------------------------------


def mat_mul(A, B):
    return [
        [sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def mat_inv(A) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q; raises SingularJacobian when singular."""
    n = len(A)
    M = [[Q(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularJacobian("matrix is singular over the rationals")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _transpose(A):
    return [list(r) for r in zip(*A)]


# canonical systems ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MvSystem:
    """Vector symbol V with inverse Z and W = inverse Jacobian (``W[i][j]``)."""

    V: tuple
    Z: tuple
    W: tuple

    @property
    def nvars(self) -> int:
        return len(self.V)

    @property
    def order(self) -> int:
        return min(f.order for f in self.V)


def mv_system(V: list[MultiSeries]) -> MvSystem:
    """Build Z with ``V(Z(v)) = v`` and ``W = (dV/dz)^{-1}``.

    Z comes from the graded fixed point ``Z <- L^{-1}(v - N(Z))`` where ``L``
    is the linear part of V and ``N`` the rest; each pass fixes one more degree.
    """
    N = len(V)
    if any(f.nvars != N for f in V):
        raise ValueError("V must map N variables to N components")
    order = min(f.order for f in V)
    if order < 1:
        raise OrderTooLow("need at least the linear terms", needed=1, have=order)
    if any(f.constant_term() for f in V):
        raise ValueError("V must vanish at the origin")
    V = [f.truncate(order) for f in V]
    L = [f.linear_part() for f in V]
    Linv = mat_inv(L)
    nonlin = []
    for i, f in enumerate(V):
        lin = MultiSeries(N, {tuple(int(j == k) for k in range(N)): L[i][j] for j in range(N)}, order)
        nonlin.append(f - lin)
    v = [MultiSeries.var(N, i, order) for i in range(N)]

    def apply_linv(vec):
        return [sum((Linv[i][j] * vec[j] for j in range(N)), MultiSeries(N, {}, order)) for i in range(N)]

    Z = apply_linv(v)
    for _ in range(order):
        rhs = [v[i] - nonlin[i].substitute(Z) for i in range(N)]
        new = apply_linv(rhs)
        if new == Z:
            break
        Z = new
    W = _jacobian_inverse(V, L, Linv)
    return MvSystem(V=tuple(V), Z=tuple(Z), W=tuple(tuple(r) for r in W))


def _jacobian_inverse(V, L, Linv):
    """``J^{-1} = sum_k (-L^{-1} J')^k L^{-1}`` where ``J' = J - L`` vanishes at 0."""
    N = len(V)
    J = [[f.partial(j) for j in range(N)] for f in V]
    order = J[0][0].order
    zero = MultiSeries(N, {}, order)
    Jp = [[J[i][j] - L[i][j] for j in range(N)] for i in range(N)]
    # M = -L^{-1} J'
    M = [[sum((-Linv[i][k] * Jp[k][j] for k in range(N)), zero) for j in range(N)] for i in range(N)]
    base = [[MultiSeries.constant(N, Linv[i][j], order) for j in range(N)] for i in range(N)]
    term = base
    total = base
    for _ in range(order):
        term = [[sum((M[i][k] * term[k][j] for k in range(N)), zero) for j in range(N)] for i in range(N)]
        if all(not t.terms for row in term for t in row):
            break
        total = [[total[i][j] + term[i][j] for j in range(N)] for i in range(N)]
    return total


def mv_hermite_bessel(N: int, order: int) -> list[MultiSeries]:
    """``V_j(z) = z_j - (1/2) sum_i z_i^2``."""
    sq = MultiSeries(N, {tuple(2 * int(k == i) for k in range(N)): Fraction(1, 2) for i in range(N)}, order)
    return [MultiSeries.var(N, j, order) - sq for j in range(N)]


def mv_linear(A, order: int) -> list[MultiSeries]:
    """``V(z) = (A^{-1})^T z``, so that ``Z(v) = A^T v`` and ``Y = A x``."""
    N = len(A)
    B = _transpose(mat_inv(A))
    return [
        MultiSeries(N, {tuple(int(k == j) for k in range(N)): B[i][j] for j in range(N)}, order)
        for i in range(N)
    ]


def s_closed_form(N: int, order: int) -> MultiSeries:
    """``S(v) = (1 - s1 - sqrt((1 - s1)^2 - N s2)) / N`` with ``s1 = sum v``, ``s2 = sum v^2``."""
    s1 = sum((MultiSeries.var(N, i, order) for i in range(N)), MultiSeries(N, {}, order))
    s2 = sum((MultiSeries.var(N, i, order) * MultiSeries.var(N, i, order) for i in range(N)), MultiSeries(N, {}, order))
    one_minus = 1 - s1
    inside = one_minus * one_minus - N * s2  # equals 1 + u with u(0) = 0
    root = (inside - 1).apply_univariate(fps.sqrt(fps.Series([1, 1], order)))
    return (one_minus - root) / N


def mv_exp_extract(F: list[MultiSeries], n: tuple) -> MultiPoly:
    """``n! [v^n] exp(x . F(v))`` as a polynomial in ``x``.

    Only ``x^m`` with ``|m| <= |n|`` can contribute since each ``F_k`` vanishes at 0.
    """
    N = len(F)
    n = tuple(n)
    deg = sum(n)
    order = min(f.order for f in F)
    if deg > order:
        raise OrderTooLow(f"|n| = {deg} exceeds series order {order}", needed=deg, have=order)
    pows = []
    for f in F:
        ps = [MultiSeries.constant(N, 1, order)]
        for _ in range(deg):
            ps.append(ps[-1] * f)
        pows.append(ps)
    nf = _mfact(n)
    out = {}
    for d in range(deg + 1):
        for m in monomials(N, d):
            term = MultiSeries.constant(N, 1, order)
            for k, a in enumerate(m):
                if a:
                    term = term * pows[k][a]
            c = term.coeff(n)
            if c:
                out[m] = c * Fraction(nf, _mfact(m))
    return MultiPoly(N, out)


def mv_p_poly(Z, n: tuple) -> MultiPoly:
    if isinstance(Z, MvSystem):
        Z = Z.Z
    return mv_exp_extract(list(Z), n)


def mv_q_poly(V, n: tuple) -> MultiPoly:
    """q-polynomials of the inverse system, read off ``exp(y . V(z))``."""
    if isinstance(V, MvSystem):
        V = V.V
    return mv_exp_extract(list(V), n)


def mv_apply_series(f: MultiSeries, p: MultiPoly) -> MultiPoly:
    """``f(D) p = sum_a f_a D^a p``."""
    if not p:
        return p
    if f.order < p.degree():
        raise OrderTooLow("series too short for this polynomial", needed=p.degree(), have=f.order)
    out = MultiPoly(p.nvars)
    for a, c in f.terms.items():
        q = p
        for i, k in enumerate(a):
            for _ in range(k):
                q = q.partial(i)
            if not q:
                break
        if q:
            out = out + c * q
    return out


def mv_apply_Y(W, j: int, p: MultiPoly) -> MultiPoly:
    """``Y_j p = sum_l x_l W_{l j}(D) p``."""
    if isinstance(W, MvSystem):
        W = W.W
    out = MultiPoly(p.nvars)
    for lam in range(len(W)):
        out = out + mv_apply_series(W[lam][j], p).times_var(lam)
    return out


def mv_q_factorization_check(N: int, n: tuple) -> MultiPoly:
    """``prod_j He_{n_j}(y_j, sum_i y_i)`` as a polynomial in ``y``."""
    total = sum((MultiPoly.var(N, i) for i in range(N)), MultiPoly(N))
    out = MultiPoly.one(N)
    for j, nj in enumerate(n):
        yj = MultiPoly.var(N, j)
        he = MultiPoly(N)
        for (a, b), c in hermite_he_coeffs(nj).items():
            he = he + c * (yj**a) * (total**b)
        out = out * he
    return out


# linear maps ---------------------------------------------------------------


def _linear_form_powers(A, d: int, zero, one):
    """Rows of ``(A x)^n`` over degree-d monomials; entries may be any ring elements."""
    N = len(A)
    basis = monomials(N, d)
    forms = [{tuple(int(k == j) for k in range(N)): A[i][j] for j in range(N)} for i in range(N)]

    def mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, zero) + c1 * c2
        return out

    rows = []
    for n in basis:
        acc = {(0,) * N: one}
        for i, a in enumerate(n):
            for _ in range(a):
                acc = mul(acc, forms[i])
        rows.append([acc.get(m, zero) for m in basis])
    return basis, rows


def sym_power(A, d: int, zero=None, one=None):
    """Matrix of ``x^n -> (A x)^n`` on degree-d monomials: ``(Ax)^n = sum_m Abar[n][m] x^m``.

    Returns ``(basis, rows)``.  Entries of ``A`` may be Fractions or any ring
    elements supporting ``+`` and ``*`` (pass matching ``zero`` and ``one``).
    """
    if zero is None:
        A = [[Q(a) for a in row] for row in A]
        zero, one = Fraction(0), Fraction(1)
    return _linear_form_powers(A, d, zero, one)


def gamma_map(A, d: int):
    """Gamma(A) on degree-d monomials, read off ``(A x . v) exp(x . v)``.

    The coefficient of ``v^n/n! x^m`` gives ``Gamma(A)[n][m]``.  Works in the
    polynomial ring on ``(x, v)``, keeping only the ``v``-degree ``d`` part.
    """
    A = [[Q(a) for a in row] for row in A]
    N = len(A)
    nv = 2 * N
    x = [MultiPoly.var(nv, i) for i in range(N)]
    v = [MultiPoly.var(nv, N + i) for i in range(N)]
    Ax_dot_v = MultiPoly(nv)
    for i in range(N):
        for j in range(N):
            if A[i][j]:
                Ax_dot_v = Ax_dot_v + A[i][j] * x[j] * v[i]
    xv = sum((x[i] * v[i] for i in range(N)), MultiPoly(nv))
    # v-degree d part of (Ax.v) exp(x.v) comes from (x.v)^(d-1)/(d-1)!
    if d == 0:
        gf = MultiPoly(nv)
    else:
        gf = Ax_dot_v * (xv ** (d - 1)) * Fraction(1, factorial(d - 1))
    basis = monomials(N, d)
    rows = []
    for n in basis:
        nf = _mfact(n)
        rows.append([gf.coeff(tuple(m) + tuple(n)) * nf for m in basis])
    return basis, rows


def matrix_to_dict(basis, rows) -> dict:
    return {
        "basis": [list(e) for e in basis],
        "entries": [[to_wire(Q(c)) for c in row] for row in rows],
    }
