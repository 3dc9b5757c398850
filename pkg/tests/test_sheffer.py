from fractions import Fraction as F

import pytest

from canonpoly import canonical as C
from canonpoly import fps
from canonpoly import systems as S
from canonpoly.errors import OrderTooLow, UnsupportedDeformation
from canonpoly.fps import Series
from canonpoly.multivariate import MultiPoly
from canonpoly.opcalc import apply_D_series, apply_dvf, operator_exp
from canonpoly.poly import X, Poly
from canonpoly.sheffer import (
    ShefferDeformation,
    deformed_p,
    deformed_p_bivariate,
    deformed_raise,
    evolve,
)

ORDER = 14
HEAT = Series([0, 0, F(-1, 2)], ORDER)
SQUARE = Series([0, 0, 1], ORDER)
CUBE = Series([0, 0, 0, 1], ORDER)
BASES = [(name, None) for name in S.NAMES if name != "gegenbauer"] + [("gegenbauer", F(1, 2)), ("gegenbauer", F(2))]


def base(name, param=None):
    return S.build(name, param, ORDER).system


def hermite_he(n, t):
    # He_{n+1} = x He_n - n t He_{n-1}
    seq = [Poly([1]), X]
    while len(seq) <= n:
        m = len(seq) - 1
        seq.append(X * seq[m] - m * t * seq[m - 1])
    return seq[n]


@pytest.mark.parametrize("t", [F(1), F(1, 2)])
def test_standard_base_gives_hermite(t):
    d = ShefferDeformation(C.standard_system(ORDER), HEAT, t)
    for n in range(9):
        assert deformed_p(d, n) == hermite_he(n, t)
        assert deformed_p(d, n) == S.hermite_eval(n, X, t)


def test_he4_at_t_one():
    d = ShefferDeformation(C.standard_system(ORDER), HEAT, 1)
    assert deformed_p(d, 4) == Poly([3, 0, -6, 0, 1])


def test_t_zero_is_base():
    b = base("laguerre")
    d = ShefferDeformation(b, CUBE, 0)
    for n in range(9):
        assert deformed_p(d, n) == C.p_poly(b, n)


def test_vacuum_preserved():
    d = ShefferDeformation(base("hermite_bessel"), Series([0, 3, -1, 2], ORDER), F(5, 3))
    assert deformed_p(d, 0) == Poly([1])


def test_h_with_constant_rejected():
    with pytest.raises(UnsupportedDeformation):
        ShefferDeformation(base("poisson"), Series([1, 1], ORDER), 1)
    with pytest.raises(UnsupportedDeformation):
        evolve(Series([1], 3), 1, X)
    with pytest.raises(UnsupportedDeformation):
        deformed_p_bivariate(C.standard_system(6), Series([2, 0, 1], 6), 2)


def test_order_checked():
    d = ShefferDeformation(C.standard_system(ORDER), Series([0, 0, 1], 4), 1)
    with pytest.raises(OrderTooLow):
        deformed_p(d, 6)


def test_bivariate_hermite():
    b = C.standard_system(ORDER)
    x, t = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    assert deformed_p_bivariate(b, HEAT, 4) == x**4 - 6 * x**2 * t + 3 * t**2


def test_bivariate_specializes():
    b = base("arcsinh")
    d = ShefferDeformation(b, CUBE, F(2, 3))
    for n in range(8):
        biv = deformed_p_bivariate(b, CUBE, n)
        special = Poly()
        for (i, j), c in biv.terms.items():
            special = special + c * F(2, 3) ** j * Poly.monomial(i)
        assert special == deformed_p(d, n)


def test_matches_operator_exponential():
    for name, param in BASES:
        b = base(name, param)
        d = ShefferDeformation(b, SQUARE, F(-1, 3))
        for n in range(9):
            assert deformed_p(d, n) == operator_exp(SQUARE, F(-1, 3), C.p_poly(b, n))


@pytest.mark.parametrize("name, param", BASES)
@pytest.mark.parametrize("H", [HEAT, SQUARE, CUBE], ids=["heat", "square", "cube"])
def test_commutator(name, param, H):
    d = ShefferDeformation(base(name, param), H, F(3, 4))
    V = d.base.V
    for k in range(11):
        p = Poly.monomial(k)
        lhs = apply_D_series(V, deformed_raise(d, p)) - deformed_raise(d, apply_D_series(V, p))
        assert lhs == p


@pytest.mark.parametrize("name, param", BASES)
def test_raise_and_lower(name, param):
    d = ShefferDeformation(base(name, param), CUBE, F(1, 2))
    for n in range(1, 9):
        assert deformed_raise(d, deformed_p(d, n - 1)) == deformed_p(d, n)
        assert apply_D_series(d.base.V, deformed_p(d, n)) == n * deformed_p(d, n - 1)


def test_raise_at_t_zero():
    b = base("tanh")
    d = ShefferDeformation(b, CUBE, 0)
    for k in range(8):
        assert deformed_raise(d, Poly.monomial(k)) == apply_dvf(b.W, Poly.monomial(k))


@pytest.mark.parametrize("H", [HEAT, CUBE], ids=["heat", "cube"])
def test_conjugation_identity(H):
    t = F(2, 5)
    Hp = fps.derivative(H)
    for k in range(9):
        p = Poly.monomial(k)
        lhs = evolve(H, t, X * evolve(H, -t, p))
        assert lhs == X * p + t * apply_D_series(Hp, p)


def test_group_law():
    b = base("laguerre")
    t1, t2 = F(1, 3), F(-3, 4)
    for n in range(9):
        lhs = deformed_p(ShefferDeformation(b, HEAT, t1 + t2), n)
        rhs = evolve(HEAT, t1, deformed_p(ShefferDeformation(b, HEAT, t2), n))
        assert lhs == rhs
