from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from riemcurv.immersion import (
    XYZ,
    RelElement,
    c_to_gamma,
    gamma_to_c,
    immersion_homomorphism,
    immersion_pullback,
    lk_invariance_check,
    one_minus_quarter_z,
    sphere_in_sphere_specialize,
    totally_geodesic_specialize,
)
from riemcurv.riemannian import XI_ETA, RElement, basis_element, lk_bar
from riemcurv.scalars import LAMBDA, ExactScalar, gen_binomial
from riemcurv.sphere import SphereElement, t_power_in_tau

from conftest import sparse_series

N = 10


def test_c_to_gamma_examples():
    e = RelElement.from_coeffs({(4, 1, 0): 1}, N)
    assert c_to_gamma(e) == RelElement.from_coeffs({(4, 1, 0): 1}, N, "G")
    e = RelElement.from_coeffs({(3, 0, 1): 1}, N)
    assert c_to_gamma(e) == RelElement.from_coeffs({(3, 0, 1): 1, (3, 1, 0): -1}, N, "G")


def test_c_to_gamma_binomial_rule():
    # C_{kpl} = sum_j (-1)^j C(l, j) Gamma_{k, p+j, l-j}
    e = RelElement.from_coeffs({(8, 1, 3): 1}, N)
    want = {(8, 1 + j, 3 - j): (-1) ** j * gen_binomial(3, j) for j in range(4)}
    assert c_to_gamma(e) == RelElement.from_coeffs(want, N, "G")


@given(sparse_series(XYZ, 8))
def test_gamma_round_trips(f):
    e = RelElement(f, "C")
    assert gamma_to_c(c_to_gamma(e)) == e
    g = RelElement(f, "G")
    assert c_to_gamma(gamma_to_c(g)) == g


def test_bases_do_not_mix():
    with pytest.raises(ValueError):
        c_to_gamma(RelElement.from_coeffs({(0, 0, 0): 1}, N, "G"))
    with pytest.raises(ValueError):
        RelElement.from_coeffs({(0, 0, 0): 1}, N) + RelElement.from_coeffs({(0, 0, 0): 1}, N, "G")


def test_pullback_of_unit():
    e = immersion_pullback(basis_element(0, 0, N))
    assert list(e.items()) == [(2 * j, 0, j, Fraction(1, 4 ** j)) for j in range(N // 2 + 1)]


def test_pullback_of_c10():
    e = immersion_pullback(basis_element(1, 0, N))
    assert e.coeff(1, 0, 0) == 1
    assert e.coeff(3, 0, 1) == Fraction(3, 8)
    assert e.coeff(5, 0, 2) == Fraction(15, 128)


@pytest.mark.parametrize("k", range(9))
def test_pullback_coefficient_table(k):
    e = immersion_pullback(basis_element(k, 0, k + 10))
    for j in range(6):
        assert e.coeff(k + 2 * j, 0, j) == gen_binomial(Fraction(k, 2) + j, j) / 4 ** j


@given(sparse_series(XI_ETA, N))
def test_geodesic_specialization_inverts_pullback(f):
    e = RElement(f)
    assert totally_geodesic_specialize(immersion_pullback(e)) == e


def test_geodesic_specialization_examples():
    assert totally_geodesic_specialize(RelElement.from_coeffs({(5, 1, 1): 3}, N)).series.is_zero()
    assert totally_geodesic_specialize(RelElement.from_coeffs({(5, 1, 0): 3}, N)) == basis_element(5, 1, N) * 3


@given(sparse_series(XI_ETA, N), sparse_series(XI_ETA, N))
def test_sigma_is_multiplicative(f, g):
    sigma = immersion_homomorphism
    assert sigma(f * g) == sigma(f) * sigma(g)


@given(sparse_series(XI_ETA, N))
def test_pullback_factors_through_sigma(f):
    lhs = immersion_pullback(RElement(f)).series * one_minus_quarter_z(1, N)
    assert lhs == immersion_homomorphism(f)


@pytest.mark.parametrize("k", range(13))
def test_lk_invariance(k):
    assert lk_invariance_check(k, 12)


@pytest.mark.parametrize("k", range(8))
def test_lk_invariance_detects_perturbation(k):
    bad = lk_bar(k, 12) + basis_element(k + 2, k // 2 + 1, 12)
    assert not lk_invariance_check(k, 12, bad)


def test_sphere_in_sphere_examples():
    assert sphere_in_sphere_specialize(RelElement.from_coeffs({(3, 0, 0): 1}, N), 2, 3) == SphereElement({3: 1}, N)
    assert sphere_in_sphere_specialize(RelElement.from_coeffs({(3, 1, 0): 1}, N), 2, 3) == SphereElement({3: 2}, N)


@pytest.mark.parametrize("k", range(6))
def test_euclidean_ambient_reproduces_t_powers(k):
    mu = LAMBDA
    got = sphere_in_sphere_specialize(immersion_pullback(basis_element(k, 0, N)), 0, mu)
    assert got == t_power_in_tau(k, N, mu)


@pytest.mark.parametrize("k, p", [(k, p) for k in range(7) for p in range(k // 2 + 1)])
def test_equal_curvatures_scale_by_lambda_power(k, p):
    got = sphere_in_sphere_specialize(immersion_pullback(basis_element(k, p, N)), LAMBDA, LAMBDA)
    assert got == SphereElement({k: LAMBDA ** p}, N)
