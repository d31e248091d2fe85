"""Riemannian curvature measures C_{kp} and the R[t] module action.

An :class:`RElement` is stored as its generating series in xi (weight 1) and
eta (weight 2); the coefficient of ``xi^(k-2p) eta^p`` is the coefficient of
``C_{kp}``.  Weighted degree equals the grading ``deg C_{kp} = k``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, List, Tuple

from .scalars import ExactScalar, PI, factorial, gen_binomial, omega
from .series import Alphabet, GradedSeries, binomial_power

XI_ETA = Alphabet.of(xi=1, eta=2)


class RElement:
    __slots__ = ("series",)

    def __init__(self, series: GradedSeries):
        if series.alphabet != XI_ETA:
            raise ValueError(f"RElement needs a series over {XI_ETA.names}")
        self.series = series

    @property
    def order(self) -> int:
        return self.series.order

    @classmethod
    def zero(cls, order: int) -> "RElement":
        return cls(GradedSeries.zero(XI_ETA, order))

    @classmethod
    def from_coeffs(cls, coeffs, order: int) -> "RElement":
        """Build from a ``{(k, p): coeff}`` mapping."""
        terms = {}
        for (k, p), c in coeffs.items():
            _check_kp(k, p)
            terms[(k - 2 * p, p)] = c
        return cls(GradedSeries(XI_ETA, order, terms))

    def coeff(self, k: int, p: int) -> ExactScalar:
        _check_kp(k, p)
        return self.series.coeff((k - 2 * p, p))

    def items(self) -> Iterator[Tuple[int, int, ExactScalar]]:
        """(k, p, coeff) triples in graded order."""
        for (a, b), c in self.series.items():
            yield a + 2 * b, b, c

    def triples(self) -> List[Tuple[int, int, ExactScalar]]:
        return list(self.items())

    def __add__(self, other: "RElement") -> "RElement":
        return RElement(self.series + other.series)

    def __sub__(self, other: "RElement") -> "RElement":
        return RElement(self.series - other.series)

    def __neg__(self):
        return RElement(-self.series)

    def __mul__(self, c) -> "RElement":
        return RElement(self.series.scale(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RElement):
            return NotImplemented
        return self.series == other.series

    __hash__ = None

    def truncate(self, order: int) -> "RElement":
        return RElement(self.series.truncate(order))

    def __str__(self):
        if self.series.is_zero():
            return "0"
        return " + ".join(f"({c})*C[{k},{p}]" for k, p, c in self.items())

    def __repr__(self):
        return f"RElement({self})"


def _check_kp(k: int, p: int):
    if k < 0 or p < 0 or 2 * p > k:
        raise ValueError(f"C_{{k,p}} needs 0 <= 2p <= k, got k={k}, p={p}")


def basis_element(k: int, p: int, order: int | None = None) -> RElement:
    _check_kp(k, p)
    order = k if order is None else order
    return RElement(GradedSeries.monomial(XI_ETA, (k - 2 * p, p), order))


def _xi(order):
    return GradedSeries.var(XI_ETA, "xi", order)


def _one_minus_eta_quarter_power(r, order) -> GradedSeries:
    # (1 - eta/4)^r
    return binomial_power(GradedSeries.var(XI_ETA, "eta", order, Fraction(1, 4)), r)


def lk_bar(k: int, order: int) -> RElement:
    """xi^k (1 - eta/4)^(-k/2 - 1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    r = -Fraction(k, 2) - 1
    return RElement(_xi(order) ** k * _one_minus_eta_quarter_power(r, order))


def lk_normalized(k: int, order: int) -> RElement:
    return lk_bar(k, order) * (PI ** k / (omega(k) * factorial(k)))


def t_act(e: RElement) -> RElement:
    """Multiply the series by xi (1 - eta/4)^(-1/2).

    Truncation does not degrade: the multiplier has no constant term.
    """
    n = e.order
    return RElement(e.series * (_xi(n) * _one_minus_eta_quarter_power(Fraction(-1, 2), n)))


def t_power_act(i: int, e: RElement) -> RElement:
    """Multiply by xi^i (1 - eta/4)^(-i/2)."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if i == 0:
        return e
    n = e.order
    return RElement(e.series * (_xi(n) ** i * _one_minus_eta_quarter_power(-Fraction(i, 2), n)))


def t_power_coefficients(i: int, j: int) -> Fraction:
    """Coefficient of C_{k+i+2j, p+j} in t^i C_{kp}: C(i/2 + j - 1, j) / 4^j."""
    return gen_binomial(Fraction(i, 2) + j - 1, j) / 4 ** j

