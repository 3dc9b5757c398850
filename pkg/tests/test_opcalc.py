from fractions import Fraction as F

import pytest

from canonpoly import fps
from canonpoly import systems as S
from canonpoly.canonical import default_order
from canonpoly.errors import OrderTooLow
from canonpoly.fps import Series
from canonpoly.opcalc import (
    apply_D_series,
    apply_dvf,
    commutator_on_poly,
    iterate_dvf,
    operator_exp,
)
from canonpoly.poly import X, Poly

ORDER = 14
BASES = [(name, None) for name in S.NAMES if name != "gegenbauer"] + [
    ("gegenbauer", F(1, 2)),
    ("gegenbauer", F(1)),
    ("gegenbauer", F(2)),
]


def built(name, param):
    return S.build(name, param, ORDER).system


# Poly -------------------------------------------------------------------------


def test_poly_trims_and_degree():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).degree == -1
    assert Poly.monomial(3, 2).degree == 3


def test_poly_arithmetic():
    p = Poly([1, 1])
    assert p * p == Poly([1, 2, 1])
    assert p**3 == Poly([1, 3, 3, 1])
    assert (p - p) == Poly()
    assert p / 2 == Poly([F(1, 2), F(1, 2)])
    assert 3 - X == Poly([3, -1])


def test_poly_evaluation_and_substitution():
    p = Poly([1, 0, 1])
    assert p(F(1, 2)) == F(5, 4)
    assert p(Poly([1, 1])) == Poly([2, 2, 1])
    assert p.scale_var(2) == Poly([1, 0, 4])


def test_poly_pretty():
    p = Poly([0, -6, 11, -6, 1])
    assert p.pretty() == "x^4 - 6 x^3 + 11 x^2 - 6 x"
    assert p.pretty("y", latex=True) == "y^{4} - 6 y^{3} + 11 y^{2} - 6 y"
    assert Poly().pretty() == "0"
    assert Poly([F(1, 2)]).pretty(as_float=True) == "0.5"


def test_poly_json_round_trip():
    p = Poly([F(-1, 3), 0, 5])
    assert p.to_list() == ["-1/3", "0/1", "5/1"]
    assert Poly.from_json(p.to_json()) == p


# f(D) ------------------------------------------------------------------------


def test_shift_operator():
    assert apply_D_series(fps.exp_series(4, -1), Poly.monomial(2)) == Poly([1, -2, 1])


def test_identity_operator():
    p = Poly([3, 1, 4, 1, 5])
    assert apply_D_series(fps.constant(1, 6), p) == p


def test_plain_derivative():
    assert apply_D_series(fps.variable(5), Poly.monomial(3)) == Poly.monomial(2, 3)


def test_order_checked_eagerly():
    with pytest.raises(OrderTooLow) as info:
        apply_D_series(fps.exp_series(2), Poly.monomial(5))
    assert info.value.needed == 5
    assert info.value.have == 2


# dual vector fields ----------------------------------------------------------------


def test_poisson_dvf_three_times():
    assert iterate_dvf(fps.exp_series(6, -1), 3)[3] == Poly([0, 2, -3, 1])


def test_standard_dvf():
    for n in range(6):
        assert apply_dvf(fps.constant(1, 8), Poly.monomial(n)) == Poly.monomial(n + 1)


def test_hermite_bessel_dvf_four_times():
    W = fps.geometric(8)
    assert iterate_dvf(W, 4)[4] == Poly([0, 15, 15, 6, 1])


def test_iterate_from_start():
    W = fps.constant(1, 6)
    assert iterate_dvf(W, 2, start=X) == [X, X * X, X * X * X]


@pytest.mark.parametrize("name, param", BASES)
def test_degree_law(name, param):
    sysm = built(name, param)
    for k in range(10):
        assert apply_dvf(sysm.W, Poly.monomial(k)).degree == k + 1


# commutators ----------------------------------------------------------------------


def test_poisson_commutator_on_square():
    V = fps.exp_series(5) - 1
    W = fps.exp_series(5, -1)
    p = Poly.monomial(2)
    assert commutator_on_poly(V, W, p) == p


def test_standard_commutator():
    for n in range(8):
        p = Poly.monomial(n)
        assert commutator_on_poly(fps.variable(10), fps.constant(1, 10), p) == p


def test_hermite_bessel_commutator():
    V = Series([0, 1, F(-1, 2)], 6)
    p = Poly([0, 1, 0, 1])
    assert commutator_on_poly(V, fps.geometric(6), p) == p


def test_commutator_order_check():
    with pytest.raises(OrderTooLow):
        commutator_on_poly(fps.variable(3), fps.constant(1, 3), Poly.monomial(3))


@pytest.mark.parametrize("name, param", BASES)
def test_hw_relation_all_bases(name, param):
    sysm = built(name, param)
    for k in range(13):
        p = Poly.monomial(k) + Poly([1, -1])
        assert commutator_on_poly(sysm.V, sysm.W, p) == p


@pytest.mark.parametrize("name, param", BASES)
def test_derivative_of_symbol(name, param):
    sysm = built(name, param)
    for k in range(13):
        p = Poly.monomial(k)
        lhs = apply_D_series(sysm.V, X * p) - X * apply_D_series(sysm.V, p)
        assert lhs == apply_D_series(sysm.Vprime, p)


@pytest.mark.parametrize("name, param", BASES)
def test_lowering_on_iterated_dvf(name, param):
    sysm = built(name, param)
    ps = iterate_dvf(sysm.W, 10)
    for n in range(1, 11):
        assert apply_D_series(sysm.V, ps[n]) == n * ps[n - 1]


# operator exponential --------------------------------------------------------------


def test_operator_exp_heat():
    # exp(-D^2/2) x^4 = He_4(x)
    H = Series([0, 0, F(-1, 2)], 6)
    assert operator_exp(H, 1, Poly.monomial(4)) == Poly([3, 0, -6, 0, 1])


def test_operator_exp_shift():
    assert operator_exp(fps.variable(5), 2, Poly.monomial(3)) == Poly([8, 12, 6, 1])


def test_operator_exp_needs_vanishing_h():
    with pytest.raises(ValueError):
        operator_exp(Series([1, 1], 4), 1, X)


def test_default_order_adds_guard():
    assert default_order(10) == 13
