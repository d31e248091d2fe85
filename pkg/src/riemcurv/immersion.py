"""Relative curvature measures and the isometric-immersion transform.

A :class:`RelElement` is a series in x (weight 1), y, z (weight 2).  In the
``C`` basis ``x^(k-2p-2l) y^p z^l`` stands for C_{kpl}; in the ``G`` basis the
same monomial stands for Gamma_{kpl}.  The two readings differ by z -> z - y.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Tuple

from .riemannian import XI_ETA, RElement, lk_bar
from .scalars import ExactScalar, as_scalar
from .series import Alphabet, GradedSeries, binomial_power, substitute
from .sphere import SphereElement

XYZ = Alphabet.of(x=1, y=2, z=2)

BASES = ("C", "G")


class RelElement:
    __slots__ = ("series", "basis")

    def __init__(self, series: GradedSeries, basis: str = "C"):
        if series.alphabet != XYZ:
            raise ValueError(f"RelElement needs a series over {XYZ.names}")
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        self.series = series
        self.basis = basis

    @property
    def order(self) -> int:
        return self.series.order

    @classmethod
    def from_coeffs(cls, coeffs, order: int, basis: str = "C") -> "RelElement":
        terms = {}
        for (k, p, l), c in coeffs.items():
            _check_kpl(k, p, l)
            terms[(k - 2 * p - 2 * l, p, l)] = c
        return cls(GradedSeries(XYZ, order, terms), basis)

    def coeff(self, k: int, p: int, l: int) -> ExactScalar:
        _check_kpl(k, p, l)
        return self.series.coeff((k - 2 * p - 2 * l, p, l))

    def items(self) -> Iterator[Tuple[int, int, int, ExactScalar]]:
        rows = [(a + 2 * b + 2 * c, b, c, v) for (a, b, c), v in self.series.items()]
        return iter(sorted(rows, key=lambda r: r[:3]))

    def __add__(self, other):
        _same_basis(self, other)
        return RelElement(self.series + other.series, self.basis)

    def __sub__(self, other):
        _same_basis(self, other)
        return RelElement(self.series - other.series, self.basis)

    def __mul__(self, c):
        return RelElement(self.series.scale(c), self.basis)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RelElement):
            return NotImplemented
        return self.basis == other.basis and self.series == other.series

    __hash__ = None

    def __str__(self):
        if self.series.is_zero():
            return "0"
        return " + ".join(f"({v})*{self.basis}[{k},{p},{l}]" for k, p, l, v in self.items())


def _check_kpl(k, p, l):
    if min(k, p, l) < 0 or 2 * p + 2 * l > k:
        raise ValueError(f"relative index needs 2p + 2l <= k, got ({k}, {p}, {l})")


def _same_basis(a: RelElement, b: RelElement):
    if a.basis != b.basis:
        raise ValueError(f"cannot combine {a.basis}- and {b.basis}-basis elements")


def _var(name, order, coeff=1):
    return GradedSeries.var(XYZ, name, order, coeff)


def one_minus_quarter_z(r, order: int) -> GradedSeries:
    """(1 - z/4)^r over x, y, z."""
    return binomial_power(_var("z", order, Fraction(1, 4)), r)


def c_to_gamma(e: RelElement) -> RelElement:
    if e.basis != "C":
        raise ValueError("c_to_gamma expects a C-basis element")
    n = e.order
    return RelElement(substitute(e.series, {"z": _var("z", n) - _var("y", n)}, XYZ), "G")


def gamma_to_c(e: RelElement) -> RelElement:
    if e.basis != "G":
        raise ValueError("gamma_to_c expects a G-basis element")
    n = e.order
    return RelElement(substitute(e.series, {"z": _var("z", n) + _var("y", n)}, XYZ), "C")


def immersion_homomorphism(f: GradedSeries) -> GradedSeries:
    """The ring map xi -> x (1-z/4)^(-1/2), eta -> y (1-z/4)^(-1)."""
    n = f.order
    images = {
        "xi": _var("x", n) * one_minus_quarter_z(Fraction(-1, 2), n),
        "eta": _var("y", n) * one_minus_quarter_z(-1, n),
    }
    return substitute(f, images, XYZ)


def immersion_pullback(e: RElement, order: int | None = None) -> RelElement:
    """Pull back along an isometric immersion, in the C_{kpl} basis."""
    f = e.series if order is None else e.series.truncate(order)
    image = immersion_homomorphism(f)
    return RelElement(image * one_minus_quarter_z(-1, image.order), "C")


def totally_geodesic_specialize(e: RelElement) -> RElement:
    """Set z = 0 and read x, y as xi, eta."""
    if e.basis != "C":
        raise ValueError("totally_geodesic_specialize expects a C-basis element")
    n = e.order
    images = {
        "x": GradedSeries.var(XI_ETA, "xi", n),
        "y": GradedSeries.var(XI_ETA, "eta", n),
        "z": GradedSeries.zero(XI_ETA, n),
    }
    return RElement(substitute(e.series, images, XI_ETA))


def lk_invariance_target(k: int, order: int) -> RelElement:
    """x^k (1 - z/4)^(-k/2 - 1) in the Gamma basis."""
    return RelElement(_var("x", order) ** k * one_minus_quarter_z(-Fraction(k, 2) - 1, order), "G")


def lk_invariance_check(k: int, order: int, element: RElement | None = None) -> bool:
    """Whether the Gamma-image of the pullback of ``element`` is x^k (1-z/4)^(-k/2-1).

    ``element`` defaults to lk_bar(k).
    """
    if element is None:
        element = lk_bar(k, order)
    lhs = c_to_gamma(immersion_pullback(element, order))
    return lhs == lk_invariance_target(k, order)


def sphere_in_sphere_specialize(e: RelElement, lam, mu) -> SphereElement:
    """Evaluate for a subsphere of curvature mu inside a sphere of curvature lam.

    y -> lam, z -> mu - lam, and C_{k,0,0} becomes tau_k of the mu-sphere.
    """
    if e.basis != "C":
        raise ValueError("sphere_in_sphere_specialize expects a C-basis element")
    lam, mu = as_scalar(lam), as_scalar(mu)
    gap = mu - lam
    coeffs = {}
    for k, p, l, c in e.items():
        v = c * lam ** p * gap ** l
        if v:
            coeffs[k] = coeffs[k] + v if k in coeffs else v
    return SphereElement(coeffs, e.order)
