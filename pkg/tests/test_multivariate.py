import json
import random
from fractions import Fraction as F

import pytest
from helpers import exp_t_coeffs, exp_t_series, series_rows_to_coeffs

from canonpoly import fps
from canonpoly.errors import OrderTooLow, SingularJacobian
from canonpoly.multivariate import (
    MultiPoly,
    MultiSeries,
    gamma_map,
    mat_inv,
    mat_mul,
    matrix_to_dict,
    monomials,
    mv_apply_series,
    mv_apply_Y,
    mv_hermite_bessel,
    mv_linear,
    mv_p_poly,
    mv_q_factorization_check,
    mv_q_poly,
    mv_system,
    s_closed_form,
    sym_power,
)


def hb(N, order=8):
    return mv_system(mv_hermite_bessel(N, order))


def mono(N, e, c=1):
    return MultiPoly(N, {tuple(e): c})


# containers ----------------------------------------------------------------------


def test_monomial_order():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(monomials(3, 3)) == 10


def test_multipoly_no_zero_entries():
    p = MultiPoly(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): 1}
    assert not (p - p)


def test_multipoly_pretty_and_json():
    x1, x2 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    p = x1 * x1 + x1 + x2
    assert p.pretty() == "x1^2 + x1 + x2"
    # serialized terms follow the graded order used for matrix bases
    assert [t["exp"] for t in p.to_list()] == [[1, 0], [0, 1], [2, 0]]
    assert p.to_list()[0]["coef"] == "1/1"
    assert MultiPoly.from_list(json.loads(p.to_json())) == p


def test_multiseries_truncation_order():
    a = MultiSeries.var(2, 0, 3)
    b = MultiSeries.var(2, 1, 5)
    prod = a * b
    assert prod.order == 3
    cube = a * a * a * a
    assert not cube.terms


def test_mat_inv():
    A = [[F(2), F(1)], [F(1), F(1)]]
    assert mat_mul(A, mat_inv(A)) == [[1, 0], [0, 1]]
    with pytest.raises(SingularJacobian):
        mat_inv([[F(1), F(2)], [F(2), F(4)]])


# mv_system -----------------------------------------------------------------------


@pytest.mark.parametrize("N", [2, 3])
def test_s_closed_form(N):
    sysm = hb(N, 6)
    S = s_closed_form(N, 6)
    for j in range(N):
        assert sysm.Z[j] == MultiSeries.var(N, j, 6) + S


def test_identity_symbol():
    N = 2
    sysm = mv_system([MultiSeries.var(N, j, 5) for j in range(N)])
    assert list(sysm.Z) == [MultiSeries.var(N, j, 5) for j in range(N)]
    for i in range(N):
        for j in range(N):
            assert sysm.W[i][j] == MultiSeries.constant(N, int(i == j), sysm.W[i][j].order)


def test_linear_symbol():
    A = [[F(1), F(2)], [F(0), F(3)]]
    sysm = mv_system(mv_linear(A, 4))
    for i in range(2):
        expected = sum((A[j][i] * MultiSeries.var(2, j, 4) for j in range(2)), MultiSeries(2, {}, 4))
        assert sysm.Z[i] == expected
        for j in range(2):
            assert sysm.W[i][j].constant_term() == A[j][i]


def test_singular_linear_part():
    V = [MultiSeries.var(2, 0, 4), MultiSeries.var(2, 0, 4)]
    with pytest.raises(SingularJacobian):
        mv_system(V)


@pytest.mark.parametrize("N", [2, 3])
def test_v_of_z_is_identity(N):
    sysm = hb(N, 7)
    for j in range(N):
        assert sysm.V[j].substitute(list(sysm.Z)) == MultiSeries.var(N, j, 7)


# polynomials -----------------------------------------------------------------------


def test_hb_p_examples():
    sysm = hb(2)
    assert mv_p_poly(sysm, (1, 1)) == mono(2, (1, 1))
    assert mv_p_poly(sysm, (2, 0)) == mono(2, (2, 0)) + mono(2, (1, 0)) + mono(2, (0, 1))
    assert mv_p_poly(sysm, (0, 0)) == MultiPoly.one(2)
    assert mv_apply_Y(sysm, 0, MultiPoly.one(2)) == mono(2, (1, 0))


def test_p_poly_order_check():
    sysm = hb(2, 3)
    with pytest.raises(OrderTooLow):
        mv_p_poly(sysm, (2, 2))


@pytest.mark.parametrize("N", [2, 3])
def test_route_equivalence(N):
    sysm = hb(N, 6)
    for d in range(5):
        for n in monomials(N, d):
            p = MultiPoly.one(N)
            for j in reversed(range(N)):
                for _ in range(n[j]):
                    p = mv_apply_Y(sysm, j, p)
            q = MultiPoly.one(N)
            for j in range(N):
                for _ in range(n[j]):
                    q = mv_apply_Y(sysm, j, q)
            assert p == q == mv_p_poly(sysm, n)


@pytest.mark.parametrize("N", [2, 3])
def test_hw_relations(N):
    sysm = hb(N, 7)
    zero = MultiPoly(N)
    for d in range(6 if N == 2 else 4):
        for e in monomials(N, d):
            p = mono(N, e)
            for i in range(N):
                for j in range(N):
                    lhs = mv_apply_series(sysm.V[i], mv_apply_Y(sysm, j, p)) - mv_apply_Y(
                        sysm, j, mv_apply_series(sysm.V[i], p)
                    )
                    assert lhs == (p if i == j else zero)
                    yy = mv_apply_Y(sysm, i, mv_apply_Y(sysm, j, p)) - mv_apply_Y(sysm, j, mv_apply_Y(sysm, i, p))
                    assert yy == zero


def test_q_factorization_examples():
    assert mv_q_factorization_check(2, (1, 1)) == mono(2, (1, 1))
    assert mv_q_factorization_check(2, (2, 0)) == mono(2, (2, 0)) - mono(2, (1, 0)) - mono(2, (0, 1))
    assert mv_q_factorization_check(2, (0, 0)) == MultiPoly.one(2)


@pytest.mark.parametrize("N", [2, 3])
def test_q_factorization(N):
    sysm = hb(N, 6)
    for d in range(5):
        for n in monomials(N, d):
            assert mv_q_poly(sysm, n) == mv_q_factorization_check(N, n)


def test_apply_series_order_check():
    with pytest.raises(OrderTooLow):
        mv_apply_series(MultiSeries.var(2, 0, 1), mono(2, (2, 1)))


# linear maps ----------------------------------------------------------------------


def test_sym_power_identity():
    for d in range(4):
        basis, rows = sym_power([[1, 0], [0, 1]], d)
        assert rows == [[int(i == j) for j in range(len(basis))] for i in range(len(basis))]


def test_sym_power_example():
    basis, rows = sym_power([[1, 1], [0, 1]], 2)
    assert basis == [(2, 0), (1, 1), (0, 2)]
    assert rows == [[1, 2, 1], [0, 1, 1], [0, 0, 1]]


def _random_matrix(rng, N):
    return [[F(rng.randint(-3, 3)) for _ in range(N)] for _ in range(N)]


def test_sym_power_homomorphism():
    rng = random.Random(7)
    for _ in range(20):
        N = rng.choice([2, 3])
        d = rng.randint(0, 3)
        A, B = _random_matrix(rng, N), _random_matrix(rng, N)
        _, lhs = sym_power(mat_mul(A, B), d)
        _, a = sym_power(A, d)
        _, b = sym_power(B, d)
        assert lhs == mat_mul(a, b)


def test_gamma_identity_and_degree_one():
    for d in range(4):
        basis, rows = gamma_map([[1, 0, 0], [0, 1, 0], [0, 0, 1]], d)
        assert rows == [[d * int(i == j) for j in range(len(basis))] for i in range(len(basis))]
    A = [[F(1), F(-2)], [F(3), F(1, 2)]]
    assert gamma_map(A, 1)[1] == A


def test_gamma_diagonal():
    a, b = F(2), F(-5)
    _, rows = gamma_map([[a, 0], [0, b]], 2)
    assert rows == [[2 * a, 0, 0], [0, a + b, 0], [0, 0, 2 * b]]


def test_gamma_is_lie_homomorphism():
    rng = random.Random(11)
    for _ in range(10):
        N = rng.choice([2, 3])
        d = rng.randint(1, 3)
        A, B = _random_matrix(rng, N), _random_matrix(rng, N)
        AB, BA = mat_mul(A, B), mat_mul(B, A)
        comm = [[AB[i][j] - BA[i][j] for j in range(N)] for i in range(N)]
        _, ga = gamma_map(A, d)
        _, gb = gamma_map(B, d)
        gab, gba = mat_mul(ga, gb), mat_mul(gb, ga)
        _, lhs = gamma_map(comm, d)
        assert lhs == [[gab[i][j] - gba[i][j] for j in range(len(ga))] for i in range(len(ga))]


def test_exponential_property_small():
    A = [[F(1), F(2)], [F(-1), F(0)]]
    order = 5
    for d in (1, 2, 3):
        _, lhs = sym_power(exp_t_series(A, order), d, zero=fps.constant(0, order), one=fps.constant(1, order))
        _, G = gamma_map(A, d)
        assert series_rows_to_coeffs(lhs) == exp_t_coeffs(G, order)


def test_matrix_to_dict():
    basis, rows = sym_power([[1, 1], [0, 1]], 1)
    assert matrix_to_dict(basis, rows) == {
        "basis": [[1, 0], [0, 1]],
        "entries": [["1/1", "1/1"], ["0/1", "1/1"]],
    }
