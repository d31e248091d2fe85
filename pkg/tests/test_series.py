from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from riemcurv.immersion import XYZ, one_minus_quarter_z
from riemcurv.riemannian import XI_ETA
from riemcurv.scalars import ExactScalar, binomial
from riemcurv.series import (
    Alphabet,
    AlphabetMismatch,
    GradedSeries,
    TruncationError,
    binomial_power,
    substitute,
)

from conftest import sparse_series

N = 8
X = Alphabet.of(x=1)


def xi(order=N):
    return GradedSeries.var(XI_ETA, "xi", order)


def eta(order=N):
    return GradedSeries.var(XI_ETA, "eta", order)


def test_add_examples():
    one = GradedSeries.one(XI_ETA, N)
    assert (one + xi()) + xi() == one + xi().scale(2)
    f = one + eta().scale(3)
    assert f + GradedSeries.zero(XI_ETA, N) == f
    assert (eta().scale(Fraction(1, 4)) + eta().scale(Fraction(-1, 4))).is_zero()


def test_mul_examples():
    assert xi() * xi() == GradedSeries.monomial(XI_ETA, {"xi": 2}, N)
    f = xi() + eta().scale(5)
    assert f * GradedSeries.one(XI_ETA, N) == f
    u = eta().scale(Fraction(1, 4))
    geometric = GradedSeries(XI_ETA, N, {(0, j): Fraction(1, 4 ** j) for j in range(N // 2 + 1)})
    assert (GradedSeries.one(XI_ETA, N) - u) * geometric == GradedSeries.one(XI_ETA, N)


def test_mul_truncates_at_smaller_order():
    f = GradedSeries.var(X, "x", 3) * GradedSeries.var(X, "x", 10)
    assert f.order == 3


@pytest.mark.parametrize("order", [1, 6, 13])
def test_binomial_power_half_maclaurin(order):
    x = GradedSeries.var(X, "x", order)
    got = binomial_power(x, Fraction(-1, 2))
    want = GradedSeries(X, order, {(j,): Fraction(binomial(2 * j, j), 4 ** j) for j in range(order + 1)})
    assert got == want


@pytest.mark.parametrize("order", [1, 6, 13])
def test_binomial_power_three_halves_maclaurin(order):
    x = GradedSeries.var(X, "x", order)
    got = binomial_power(x, Fraction(-3, 2))
    want = GradedSeries(X, order, {(j,): Fraction((2 * j + 1) * binomial(2 * j, j), 4 ** j) for j in range(order + 1)})
    assert got == want


def test_binomial_power_of_zero_is_one():
    assert binomial_power(GradedSeries.zero(X, 5), Fraction(7, 2)) == GradedSeries.one(X, 5)


def test_binomial_power_needs_zero_constant_term():
    with pytest.raises(ValueError):
        binomial_power(GradedSeries.one(X, 5), 2)


def test_substitute_square_of_image():
    f = xi() ** 2
    img = GradedSeries.var(XYZ, "x", N) * one_minus_quarter_z(Fraction(-1, 2), N)
    got = substitute(f, {"xi": img}, XYZ)
    want = GradedSeries.var(XYZ, "x", N) ** 2 * one_minus_quarter_z(-1, N)
    assert got == want


def test_substitute_geometric_image():
    img = GradedSeries.var(XYZ, "y", N) * one_minus_quarter_z(-1, N)
    got = substitute(eta(), {"eta": img}, XYZ)
    for j in range(3):
        assert got.coeff({"y": 1, "z": j}) == Fraction(1, 4 ** j)


@given(sparse_series(XI_ETA, N))
def test_identity_substitution(f):
    assert substitute(f, {"xi": xi(), "eta": eta()}) == f


def test_substitute_rejects_degree_drop():
    with pytest.raises(ValueError):
        substitute(eta(), {"eta": xi()}, XI_ETA)


def test_substitute_rejects_foreign_alphabet():
    with pytest.raises(AlphabetMismatch):
        substitute(xi(), {"xi": GradedSeries.var(X, "x", N), "eta": eta()}, XI_ETA)


def test_coeff_contract():
    geometric = binomial_power(eta().scale(Fraction(1, 4)), -1)
    assert geometric.coeff({"eta": 2}) == Fraction(1, 16)
    assert GradedSeries.one(XI_ETA, N).coeff(()) == 1
    assert GradedSeries.one(XI_ETA, N).coeff((0, 0)) == 1
    with pytest.raises(TruncationError):
        geometric.coeff({"eta": 5})


def test_mixing_alphabets_fails():
    with pytest.raises(AlphabetMismatch):
        xi() + GradedSeries.var(X, "x", N)


def test_euler_operator():
    f = GradedSeries.monomial(XI_ETA, {"xi": 4, "eta": 1}, N)
    assert f.euler_op("xi", 2) == f.scale(12)
    assert f.euler_op("xi", 5).is_zero()


@given(sparse_series(XI_ETA, N), sparse_series(XI_ETA, N))
def test_substitute_is_ring_homomorphism(f, g):
    images = {
        "xi": GradedSeries.var(XYZ, "x", N) * one_minus_quarter_z(Fraction(-1, 2), N),
        "eta": GradedSeries.var(XYZ, "y", N) + GradedSeries.var(XYZ, "z", N).scale(3),
    }
    s = lambda h: substitute(h, images, XYZ)
    assert s(f * g) == s(f) * s(g)
    assert s(f + g) == s(f) + s(g)


half_integers = st.integers(-7, 7).map(lambda n: Fraction(n, 2))


@given(sparse_series(XYZ, 6, constant=False), half_integers, half_integers)
def test_binomial_power_exponent_law(u, r, s):
    assert binomial_power(u, r) * binomial_power(u, s) == binomial_power(u, r + s)


@given(sparse_series(XYZ, 6, constant=False))
def test_binomial_power_one(u):
    assert binomial_power(u, 1) == GradedSeries.one(XYZ, 6) - u


@given(sparse_series(XI_ETA, N), sparse_series(XI_ETA, N), sparse_series(XI_ETA, N))
def test_mul_associative_commutative(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(sparse_series(XYZ, 7))
def test_json_round_trip(f):
    text = f.to_json()
    back = GradedSeries.from_json(text)
    assert back == f and back.order == f.order and back.alphabet == f.alphabet
    assert back.to_json() == text


def test_json_schema():
    f = GradedSeries.monomial(XI_ETA, {"xi": 1, "eta": 1}, 4, ExactScalar.monomial(Fraction(3, 8), -1))
    d = f.to_dict()
    assert d["alphabet"] == [{"name": "xi", "weight": 1}, {"name": "eta", "weight": 2}]
    assert d["order"] == 4
    assert d["terms"] == [{"monomial": {"xi": 1, "eta": 1}, "coeff": "3/8 * pi^-1"}]
