from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from riemcurv import hermitian as H
from riemcurv.hermitian import BAR, ZY, HermitianElement
from riemcurv.riemannian import RElement, XI_ETA, basis_element, lk_bar
from riemcurv.scalars import LAMBDA, ONE, PI, DomainError, ExactScalar, factorial
from riemcurv.series import GradedSeries, binomial_power

from conftest import sparse_series

N = 12


def td(k, q, order=N):
    return HermitianElement.basis_element(k, q, order)


def d(k, q, order=N):
    return HermitianElement.basis_element(k, q, order, "D")


def test_delta_tilde_examples():
    assert H.tilde_to_delta(td(4, 1)) == d(4, 1) + d(4, 2) * 2
    for k in range(N + 1):
        top = k // 2
        assert H.tilde_to_delta(td(k, top)) == d(k, top)
        assert H.delta_to_tilde(d(k, top)) == td(k, top)


def test_delta_from_tilde_alternating_rule():
    # Delta_{kj} = sum_l (-1)^l C(l+j, j) Delta~_{k, l+j}
    k, j = 10, 1
    want = sum((td(k, l + j) * ((-1) ** l * factorial(l + j) // (factorial(l) * factorial(j))) for l in range(1, 5)), td(k, j))
    assert H.delta_to_tilde(d(k, j)) == want


@pytest.mark.parametrize("k", range(N + 1))
def test_delta_tilde_round_trip(k):
    for q in range(k // 2 + 1):
        assert H.tilde_to_delta(H.delta_to_tilde(d(k, q))) == d(k, q)
        assert H.delta_to_tilde(H.tilde_to_delta(td(k, q))) == td(k, q)


def test_o_p_examples():
    one = GradedSeries.one(ZY, N)
    z = GradedSeries.var(ZY, "z", N)
    assert H.O_transform(one) == GradedSeries.one(BAR, N)
    assert H.P_transform(one) == GradedSeries.one(BAR, N)
    assert H.O_transform(z) == GradedSeries.var(BAR, "xibar", N, PI * Fraction(1, 2))
    assert H.P_transform(z) == GradedSeries.var(BAR, "xibar", N, PI * Fraction(1, 4))


def _pi_bar_sum(order):
    return GradedSeries(BAR, order, {(1, 0): PI, (0, 1): PI})


def test_o_p_closed_forms_base_case():
    u = _pi_bar_sum(N)
    assert H.O_transform(H.genfun_g(0, N)) == binomial_power(u, -1)
    assert H.P_transform(H.genfun_h(0, N)) == binomial_power(u, Fraction(-3, 2))


@pytest.mark.parametrize("k", range(1, 7))
def test_o_p_closed_forms(k):
    u = _pi_bar_sum(N)
    xk = GradedSeries.var(BAR, "xibar", N) ** k
    assert H.O_transform(H.genfun_g(k, N)) == (xk * binomial_power(u, -k - 1)).scale(PI ** k)
    assert H.P_transform(H.genfun_h(k, N)) == (xk * binomial_power(u, -k - Fraction(3, 2))).scale(
        (PI * Fraction(1, 4)) ** k
    )


def test_generating_function_constant_terms():
    assert H.genfun_g(0, N).constant_term() == 1
    assert H.genfun_h(0, N).constant_term() == 1


@pytest.mark.parametrize("k", range(7))
def test_euler_operator_on_generating_functions(k):
    assert H.genfun_g(0, N).euler_op("z", k) == H.genfun_g(k, N).scale(factorial(k))
    assert H.genfun_h(0, N).euler_op("z", k) == H.genfun_h(k, N).scale(Fraction(factorial(2 * k + 1), factorial(k)))


@given(sparse_series(ZY, N), st.integers(1, 4))
def test_o_p_intertwine_euler_operators(f, k):
    for T in (H.O_transform, H.P_transform):
        assert T(f.euler_op("z", k)) == T(f).euler_op("xibar", k)


def test_lk_in_tilde_delta_leading_terms():
    e0 = H.lk_in_tilde_delta(0)
    assert e0.degree_part(0) == {0: ONE}
    e1 = H.lk_in_tilde_delta(1)
    assert e1.degree_part(1) == {0: PI.inverse() * 2}


@pytest.mark.parametrize("k", range(9))
def test_lk_two_routes(k):
    assert H.lk_in_tilde_delta(k, LAMBDA, N) == H.tilde_from_C(lk_bar(k, N))


@pytest.mark.parametrize("lam", [1, Fraction(-2, 3)])
def test_lk_two_routes_numeric_curvature(lam):
    for k in range(5):
        assert H.lk_in_tilde_delta(k, lam, 8) == H.tilde_from_C(lk_bar(k, 8), lam)


def test_tilde_from_c_examples():
    assert H.tilde_from_C(basis_element(0, 0, N)) == td(0, 0)
    assert H.tilde_from_C(basis_element(3, 1, N)) == (td(3, 0) + td(3, 1)) * (LAMBDA * PI ** -2 * 8)


@pytest.mark.parametrize("k", range(N + 1))
def test_c_tilde_round_trips(k):
    for p in range(k // 2 + 1):
        assert H.tilde_from_C(H.C_from_tilde(td(k, p))) == td(k, p)
        assert H.C_from_tilde(H.tilde_from_C(basis_element(k, p, N))) == basis_element(k, p, N)


@pytest.mark.parametrize("k", range(N + 1))
def test_conversion_matrices(k):
    a, b = H.c_in_tilde_matrix(k), H.tilde_in_c_matrix(k)
    assert H.is_lower_triangular_nonsingular(a)
    assert H.is_lower_triangular_nonsingular(b)
    n = k // 2 + 1
    prod = H.matmul(a, b)
    assert all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    assert H.is_reflected_triangular(H.lk_component_matrix(k))


def test_zero_curvature_is_rejected():
    with pytest.raises(DomainError):
        H.tilde_from_C(basis_element(0, 0, N), 0)
    with pytest.raises(DomainError):
        H.C_from_tilde(td(0, 0), 0)
    with pytest.raises(DomainError):
        H.t_lambda_act_via_C(td(0, 0), 0)


@pytest.mark.parametrize("k", range(9))
def test_bar_route_matches_common_form(k):
    for p in range(k // 2 + 1):
        assert H.tilde_to_C_via_bar(td(k, p)) == H.C_from_tilde(td(k, p))


def test_t_lambda_on_unit():
    e = H.t_lambda_act_closed(td(0, 0, 3))
    want = td(1, 0, 3) * (PI.inverse() * 2) + (td(3, 0, 3) + td(3, 1, 3)) * (LAMBDA * PI ** -2)
    assert e == want
    assert H.t_lambda_act_via_C(td(0, 0, 3)) == want


@pytest.mark.parametrize("k, p", [(k, p) for k in range(7) for p in range(k // 2 + 1)])
def test_t_lambda_degree_bookkeeping(k, p):
    degrees = H.t_lambda_act_closed(td(k, p, k + 7)).degrees()
    assert degrees and all(deg > k and (deg - k - 1) % 2 == 0 for deg in degrees)


def test_t_lambda_two_routes_on_td21():
    assert H.t_lambda_act_closed(td(2, 1)) == H.t_lambda_act_via_C(td(2, 1))


def test_t_lambda_zero():
    zero = HermitianElement({}, N)
    assert H.t_lambda_act_closed(zero) == zero
    assert H.t_lambda_act_via_C(zero) == zero


@pytest.mark.parametrize("k", range(N))
def test_t_lambda_lk_recursion(k):
    assert H.t_lambda_act_closed(H.tilde_from_C(lk_bar(k, N))) == H.tilde_from_C(lk_bar(k + 1, N))


@given(sparse_series(XI_ETA, 9))
def test_t_lambda_routes_agree_on_random_elements(f):
    e = H.tilde_from_C(RElement(f))
    assert H.t_lambda_act_closed(e) == H.t_lambda_act_via_C(e)
