"""
Identity checks for canonical systems.

Every check returns a :class:`Check` carrying the first counterexample found,
so a failing report says exactly which index broke.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import canonical as C
from . import fps
from . import systems as S
from .combinat import comb
from .multivariate import MultiPoly
from .opcalc import apply_D_series, apply_dvf, commutator_on_poly, iterate_dvf
from .poly import X, Poly

__all__ = ["Check", "generic_checks", "named_checks", "run_suite", "system_for"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  -- first counterexample: {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}{tail}"


def _run(name, cases):
    """``cases`` yields ``(label, lhs, rhs)``; stops at the first mismatch."""
    for label, lhs, rhs in cases:
        if lhs != rhs:
            return Check(name, False, f"{label}: {_show(lhs)} != {_show(rhs)}")
    return Check(name, True)


def _show(v):
    if isinstance(v, Poly):
        return v.pretty()
    if isinstance(v, MultiPoly):
        return v.pretty()
    return str(v)


def system_for(name: str, param, n_max: int) -> C.CanonicalSystem:
    # a few identities reach two indices past n_max
    return S.build(name, param, C.default_order(n_max + 2)).system


def _to_bivariate(p: Poly, var: int) -> MultiPoly:
    return MultiPoly(2, {tuple(k if i == var else 0 for i in range(2)): c for k, c in enumerate(p.coeffs)})


def _at_sum(p: Poly) -> MultiPoly:
    st = MultiPoly.var(2, 0) + MultiPoly.var(2, 1)
    out = MultiPoly(2)
    for k, c in enumerate(p.coeffs):
        out = out + c * st**k
    return out


# generic identities ---------------------------------------------------------


def check_inverse_pair(sys, N):
    P, Qm = C.p_matrix(sys, N), C.q_matrix(sys, N)
    ident = C.CoeffMatrix.identity(N + 1)
    return _run("P.Q = Q.P = I", [("P.Q", P @ Qm, ident), ("Q.P", Qm @ P, ident)])


def check_binomial_type(sys, n_max):
    def cases():
        ps = [C.p_poly(sys, n) for n in range(n_max + 1)]
        for n in range(n_max + 1):
            rhs = MultiPoly(2)
            for j in range(n + 1):
                rhs = rhs + comb(n, j) * _to_bivariate(ps[n - j], 0) * _to_bivariate(ps[j], 1)
            yield f"n={n}", _at_sum(ps[n]), rhs

    return _run("binomial type p_n(s+t)", cases())


def check_semigroup(sys, n_max):
    P = C.p_matrix(sys, n_max)

    def cases():
        for n in range(n_max + 1):
            for k in range(n + 1):
                for l in range(n + 1 - k):
                    lhs = sum(
                        (comb(n, j) * P[n - j, k] * P[j, l] for j in range(n + 1)), Fraction(0)
                    )
                    yield f"n={n},k={k},l={l}", lhs, comb(k + l, k) * P[n, k + l]

    return _run("coefficient semigroup", cases())


def check_route_equivalence(sys, n_max):
    iterated = iterate_dvf(sys.W, n_max)
    return _run(
        "extraction == iterated Y",
        ((f"n={n}", C.p_poly(sys, n), iterated[n]) for n in range(n_max + 1)),
    )


def check_hw(sys, deg):
    # monomials span, so linearity covers every p of degree <= deg
    return _run(
        "[V(D), Y] = I",
        ((f"x^{k}", commutator_on_poly(sys.V, sys.W, Poly.monomial(k)), Poly.monomial(k)) for k in range(deg + 1)),
    )


def check_prop_derivative(sys, deg):
    def cases():
        for k in range(deg + 1):
            p = Poly.monomial(k)
            lhs = apply_D_series(sys.V, p.shift_up()) - apply_D_series(sys.V, p).shift_up()
            yield f"x^{k}", lhs, apply_D_series(sys.Vprime, p)

    return _run("[V(D), x] = V'(D)", cases())


def check_lowering(sys, n_max):
    return _run(
        "V(D) p_n = n p_{n-1}",
        ((f"n={n}", apply_D_series(sys.V, C.p_poly(sys, n)), n * C.p_poly(sys, n - 1)) for n in range(1, n_max + 1)),
    )


def check_vacuum(sys, n_max):
    return _run(
        "p_n(0) = 0 for n > 0",
        ((f"n={n}", C.p_poly(sys, n)(0), 0) for n in range(1, n_max + 1)),
    )


def check_recursion_operator(sys, n_max):
    return _run(
        "x = Y Z'(V)^{-1}",
        ((f"n={n}", C.x_action(sys, n), X * C.p_poly(sys, n)) for n in range(n_max + 1)),
    )


def check_umbral_reciprocity(sys, n_max):
    dual = C.inverse_system(sys)

    def cases():
        for n in range(n_max + 1):
            yield f"q_{n}(Y)1", C.umbral_compose(sys, C.q_poly(sys, n)), Poly.monomial(n)
            yield f"p_{n}(X)1", C.umbral_compose(dual, C.p_poly(sys, n)), Poly.monomial(n)

    return _run("q_n(Y)1 = x^n and p_n(X)1 = y^n", cases())


def check_dual_system(sys, n_max):
    dual = C.inverse_system(sys)

    def cases():
        for n in range(n_max + 1):
            q = C.q_poly(sys, n)
            yield f"X q_{n}", apply_dvf(dual.W, q), C.q_poly(sys, n + 1)
            if n:
                yield f"Z(D) q_{n}", apply_D_series(sys.Z, q), n * C.q_poly(sys, n - 1)

    return _run("X q_n = q_{n+1}, Z(D) q_n = n q_{n-1}", cases())


def check_w_of_z(sys):
    order = sys.W.order
    lhs = fps.compose(sys.W, sys.Z.truncate(order))
    return _run("W(Z(v)) = Z'(v)", [("series", lhs, sys.Zprime)])


def generic_checks(sys: C.CanonicalSystem, n_max: int) -> list[Check]:
    return [
        check_w_of_z(sys),
        check_inverse_pair(sys, n_max),
        check_binomial_type(sys, n_max),
        check_semigroup(sys, n_max),
        check_route_equivalence(sys, n_max),
        check_hw(sys, n_max),
        check_prop_derivative(sys, n_max),
        check_lowering(sys, n_max),
        check_vacuum(sys, n_max),
        check_recursion_operator(sys, n_max),
        check_umbral_reciprocity(sys, n_max),
        check_dual_system(sys, n_max),
    ]


# system-specific identities -------------------------------------------------


def check_oracles(sys, name, param, n_max):
    def cases():
        for n in range(n_max + 1):
            yield f"p_{n}", C.p_poly(sys, n), S.oracle_p(name, param, n)
            yield f"q_{n}", C.q_poly(sys, n), S.oracle_q(name, param, n)

    return _run(f"{name} recurrence oracles", cases())


def _named_cases(sys, name, param, n_max):
    p = lambda n: C.p_poly(sys, n) if n >= 0 else Poly()
    q = lambda n: C.q_poly(sys, n) if n >= 0 else Poly()
    rng = range(n_max + 1)
    if name == "poisson":
        yield "x p_n = p_{n+1} + n p_n", [(f"n={n}", X * p(n), p(n + 1) + n * p(n)) for n in rng]
        yield "q_{n+1} = y q_n + y q_n'", [(f"n={n}", q(n + 1), X * q(n) + X * q(n).derivative()) for n in rng]
        yield "y q_n = sum C(n,k)(-1)^k q_{n+1-k}", [
            (f"n={n}", X * q(n), sum((comb(n, k) * (-1) ** k * q(n + 1 - k) for k in range(n + 1)), Poly()))
            for n in rng
        ]
        yield "p_n = falling factorial", [(f"n={n}", p(n), S.falling_poly(X, n)) for n in rng]
        yield "p_nk = s(n,k)", [
            (f"n={n}", p(n), Poly([S.classical("stirling1", n, k) for k in range(n + 1)])) for n in rng
        ]
        yield "q_n = Touchard T_n", [(f"n={n}", q(n), S.touchard(n)) for n in rng]
    elif name == "laguerre":
        yield "x p_n = p_{n+1} + 2n p_n + n(n-1) p_{n-1}", [
            (f"n={n}", X * p(n), p(n + 1) + 2 * n * p(n) + n * (n - 1) * p(n - 1)) for n in rng
        ]
        yield "q_{n+1} = (y+2n) q_n - n(n-1) q_{n-1}", [
            (f"n={n}", q(n + 1), (X + 2 * n) * q(n) - n * (n - 1) * q(n - 1)) for n in rng
        ]
        yield "p_{n+1} = x(p_n - 2p_n' + p_n'')", [
            (f"n={n}", p(n + 1), X * (p(n) - 2 * p(n).derivative() + p(n).derivative(2))) for n in rng
        ]
        yield "p_n = (-1)^n n! L_n^(-1)(x)", [(f"n={n}", p(n), S.laguerre_p_closed(n)) for n in rng]
        yield "q_n = sum C(n,k) G(n)/G(k) y^k", [(f"n={n}", q(n), S.laguerre_q_closed(n)) for n in rng]
    elif name == "hermite_bessel":
        yield "x^2 p_n = p_{n+2} - (2n+1) p_{n+1}", [
            (f"n={n}", X * X * p(n), p(n + 2) - (2 * n + 1) * p(n + 1)) for n in rng
        ]
        yield "p_{n+1} = (2n-1) p_n + x^2 p_{n-1}", [
            (f"n={n}", p(n + 1), (2 * n - 1) * p(n) + X * X * p(n - 1)) for n in range(1, n_max + 1)
        ]
        yield "q_{n+1} = y(q_n - n q_{n-1})", [(f"n={n}", q(n + 1), X * (q(n) - n * q(n - 1))) for n in rng]
        yield "p_n = x theta_{n-1}(x)", [
            (f"n={n}", p(n), S.bessel_theta(n - 1).shift_up() if n else Poly([1])) for n in rng
        ]
        yield "p_n Gamma-sum formula", [(f"n={n}", p(n), S.bessel_p(n)) for n in rng]
        yield "q_n = He_n(y, y)", [(f"n={n}", q(n), S.hermite_q(n)) for n in rng]
    elif name == "arcsinh":
        yield "Y^2 = x^2 + (x D)^2", [
            (
                f"x^{k}",
                apply_dvf(sys.W, apply_dvf(sys.W, Poly.monomial(k))),
                Poly.monomial(k + 2) + k * k * Poly.monomial(k),
            )
            for k in rng
        ]
        yield "p_{n+2} = x^2 p_n + (x d/dx)^2 p_n", [
            (f"n={n}", p(n + 2), X * X * p(n) + Poly([k * k * c for k, c in enumerate(p(n).coeffs)])) for n in rng
        ]
        yield "q_{n+2} = (y^2 - n^2) q_n", [(f"n={n}", q(n + 2), (X * X - n * n) * q(n)) for n in rng]
        yield "q_n product formula", [(f"n={n}", q(n), S.arcsinh_q_product(n)) for n in rng]
        yield "p_n Touchard convolution", [(f"n={n}", p(n), S.arcsinh_p_closed(n)) for n in rng]
    elif name == "tanh":
        yield "p_{n+1} = x p_n + n(n-1) p_{n-1}", [
            (f"n={n}", p(n + 1), X * p(n) + n * (n - 1) * p(n - 1)) for n in rng
        ]
        yield "q_{n+1} = y(q_n - q_n'')", [(f"n={n}", q(n + 1), X * (q(n) - q(n).derivative(2))) for n in rng]
        yield "y q_n = q_{n+1} + sum C(n,2j) 2^(2j-1) q_{n+1-2j}", [
            (
                f"n={n}",
                X * q(n),
                q(n + 1) + sum((comb(n, 2 * j) * 2 ** (2 * j - 1) * q(n + 1 - 2 * j) for j in range(1, n // 2 + 1)), Poly()),
            )
            for n in rng
        ]
        yield "p_n zero-step Krawtchouk", [(f"n={n}", p(n), S.tanh_p_krawtchouk(n)) for n in rng]
        yield "q_n Poisson subordination by Laguerre", [(f"n={n}", q(n), S.tanh_q_subordinate(n)) for n in rng]
    elif name == "gegenbauer":
        a = param
        yield "y(2a q_n - 2n q_{n-1}) = q_{n+1} - 2a n q_n + n(n-1) q_{n-1}", [
            (f"n={n}", X * (2 * a * q(n) - 2 * n * q(n - 1)), q(n + 1) - 2 * a * n * q(n) + n * (n - 1) * q(n - 1))
            for n in rng
        ]
        yield "p_n Poisson subordination by Bessel", [(f"n={n}", p(n), S.gegenbauer_p_closed(a, n)) for n in rng]
        yield "q_n = n! C_n^(y)(alpha)", [(f"n={n}", q(n), S.gegenbauer_q_closed(a, n)) for n in rng]


def named_checks(sys, name, param, n_max) -> list[Check]:
    out = [check_oracles(sys, name, param, n_max)]
    for label, cases in _named_cases(sys, name, param, n_max):
        out.append(_run(label, cases))
    return out


def run_suite(name: str, param=None, n_max: int = 10, sys=None) -> list[Check]:
    """All generic identities plus the named system's own ones."""
    if sys is None:
        sys = system_for(name, param, n_max)
    checks = generic_checks(sys, n_max)
    if name != "custom":
        checks += named_checks(sys, name, param, n_max)
    return checks
