"""Invariant valuations on round spheres of curvature lambda.

Three bases: tau_k (globalized C_{k,0}), powers of phi, and powers of t.
Coefficients are exact scalars in which lambda may stay symbolic, so the
identities below are checked as polynomial identities in lambda.

Includes an independent oracle: intrinsic volumes of concentric round
spheres read off the euclidean tube (shell) volume.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .scalars import (
    LAMBDA,
    ZERO,
    DomainError,
    ExactScalar,
    PI,
    as_scalar,
    binomial,
    factorial,
    gen_binomial,
    omega,
    _exact_sqrt,
)
from .series import Alphabet, GradedSeries, binomial_power, substitute

X = Alphabet.of(x=1)


class SphereElement:
    """Finite combination of tau_k, exact below degree ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Dict[int, ExactScalar] | None = None, order: int = 0):
        self.order = order
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            if k < 0:
                raise ValueError("tau index must be >= 0")
            c = as_scalar(c)
            if c and k <= order:
                self.coeffs[k] = c

    def coeff(self, k: int) -> ExactScalar:
        if k > self.order:
            raise ValueError(f"tau_{k} is beyond truncation order {self.order}")
        return self.coeffs.get(k, ZERO)

    def items(self) -> Iterator[Tuple[int, ExactScalar]]:
        return iter(sorted(self.coeffs.items()))

    def __add__(self, other: "SphereElement") -> "SphereElement":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return SphereElement(out, order)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c) -> "SphereElement":
        c = as_scalar(c)
        return SphereElement({k: v * c for k, v in self.coeffs.items()}, self.order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "SphereElement":
        return SphereElement(self.coeffs, min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, SphereElement):
            return NotImplemented
        n = min(self.order, other.order)
        a = {k: v for k, v in self.coeffs.items() if k <= n}
        b = {k: v for k, v in other.coeffs.items() if k <= n}
        return a == b

    __hash__ = None

    def subs_lambda(self, lam) -> "SphereElement":
        return SphereElement({k: c.subs_lambda(lam) for k, c in self.coeffs.items()}, self.order)

    def evaluate(self, j: int, lam=LAMBDA) -> ExactScalar:
        """Value on the great sphere S^j of the curvature-``lam`` sphere."""
        if j > self.order:
            raise ValueError(f"S^{j} needs tau_{j}, beyond truncation order {self.order}")
        lam = as_scalar(lam)
        c = self.coeffs.get(j, ZERO)
        if lam != LAMBDA:
            c = c.subs_lambda(lam)
        return c * tau_eval(j, j, lam)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*tau[{k}]" for k, c in self.items())

    def __repr__(self):
        return f"SphereElement({self}; N={self.order})"


@dataclass(frozen=True)
class IntrinsicVolumeVector:
    n: int
    mu: Dict[int, ExactScalar]

    def __getitem__(self, j: int) -> ExactScalar:
        return self.mu.get(j, ZERO)


def tau_eval(k: int, j: int, lam=LAMBDA) -> ExactScalar:
    """tau_k(S^j) = delta_jk * 2 * (2/sqrt(lam))^k."""
    lam = as_scalar(lam)
    if lam.is_zero():
        raise DomainError("tau_k is undefined on a sphere of curvature 0")
    if k != j:
        return ZERO
    return lam.half_power(-k) * 2 ** (k + 1)


def _lam_quarter_x2(lam, order) -> GradedSeries:
    # lam x^2 / 4
    return GradedSeries.monomial(X, (2,), order, as_scalar(lam) * Fraction(1, 4))


def series_to_tau(f: GradedSeries) -> SphereElement:
    """Read [x^j] of a univariate series as the tau_j coefficient."""
    return SphereElement({m[0]: c for m, c in f.items()}, f.order)


def phi_generating_series(k: int, order: int, lam=LAMBDA) -> GradedSeries:
    """x^k (1 - lam x^2/4)^(-1)."""
    x = GradedSeries.var(X, "x", order)
    return x ** k * binomial_power(_lam_quarter_x2(lam, order), -1)


def phi_in_tau(k: int, order: int, lam=LAMBDA) -> SphereElement:
    return series_to_tau(phi_generating_series(k, order, lam))


def phi_series_to_tau(f: GradedSeries, lam=LAMBDA) -> SphereElement:
    """Rewrite sum_j c_j phi^j (coefficients of a univariate series) in tau."""
    total = SphereElement({}, f.order)
    for (j,), c in f.items():
        total = total + phi_in_tau(j, f.order, lam) * c
    return total


def t_power_in_phi(k: int, order: int, lam=LAMBDA) -> GradedSeries:
    """t^k = phi^k (1 - lam phi^2/4)^(-k/2), as a series in phi."""
    x = GradedSeries.var(X, "x", order)
    return x ** k * binomial_power(_lam_quarter_x2(lam, order), -Fraction(k, 2))


def t_power_in_phi_explicit(k: int, order: int, lam=LAMBDA) -> GradedSeries:
    """Same as :func:`t_power_in_phi`, term by term: C(k/2+j-1, j) (lam/4)^j phi^(k+2j)."""
    lam = as_scalar(lam)
    terms = {}
    j = 0
    while k + 2 * j <= order:
        terms[(k + 2 * j,)] = lam ** j * (gen_binomial(Fraction(k, 2) + j - 1, j) / 4 ** j)
        j += 1
    return GradedSeries(X, order, terms)


def t_power_in_tau(k: int, order: int, lam=LAMBDA) -> SphereElement:
    """t^k = sum_j C(k/2+j, j) (lam/4)^j tau_{k+2j}."""
    lam = as_scalar(lam)
    coeffs = {}
    j = 0
    while k + 2 * j <= order:
        coeffs[k + 2 * j] = lam ** j * (gen_binomial(Fraction(k, 2) + j, j) / 4 ** j)
        j += 1
    return SphereElement(coeffs, order)


def t_act_tau(e: SphereElement, lam=LAMBDA) -> SphereElement:
    """t * tau_k = sum_j C(2j, j) (lam/16)^j tau_{k+2j+1}, extended linearly."""
    lam = as_scalar(lam)
    out: Dict[int, ExactScalar] = {}
    for k, c in e.items():
        j = 0
        while k + 2 * j + 1 <= e.order:
            v = c * lam ** j * Fraction(binomial(2 * j, j), 16 ** j)
            idx = k + 2 * j + 1
            out[idx] = out[idx] + v if idx in out else v
            j += 1
    return SphereElement(out, e.order)


def poly_in_t_to_tau(q: GradedSeries, order: int | None = None, lam=LAMBDA) -> SphereElement:
    """q(t) in tau: [x^j] of (1 - lam x^2/4)^(-1) q(x (1 - lam x^2/4)^(-1/2))."""
    if q.alphabet != X:
        raise ValueError("q must be a univariate series in x")
    n = q.order if order is None else min(order, q.order)
    u = _lam_quarter_x2(lam, n)
    inner = GradedSeries.var(X, "x", n) * binomial_power(u, Fraction(-1, 2))
    composed = substitute(q.truncate(n), {"x": inner}, X)
    return series_to_tau(binomial_power(u, -1) * composed)


def globalize_on_sphere(e, order: int | None = None, lam=LAMBDA) -> SphereElement:
    """C_{kp} -> lam^p tau_k on the sphere of curvature lam."""
    lam = as_scalar(lam)
    n = e.order if order is None else min(order, e.order)
    out: Dict[int, ExactScalar] = {}
    for k, p, c in e.items():
        if k > n:
            continue
        v = c * lam ** p
        out[k] = out[k] + v if k in out else v
    return SphereElement(out, n)


# -- tube-volume oracle ---------------------------------------------------

def sphere_intrinsic_volumes(n: int, radius) -> IntrinsicVolumeVector:
    """Intrinsic volumes of the round sphere S^n of the given radius in R^(n+1).

    The shell R-r <= |x| <= R+r has volume omega_{n+1}((R+r)^(n+1) - (R-r)^(n+1));
    matching r^(n+1-j) against sum_j mu_j omega_{n+1-j} r^(n+1-j) gives mu_j.
    """
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    R = Fraction(radius)
    if R <= 0:
        raise ValueError("radius must be positive")
    d = n + 1
    mu = {}
    for j in range(d):
        i = d - j  # power of r
        shell = math.comb(d, i) * R ** (d - i) * (1 - (-1) ** i)
        mu[j] = omega(d) * shell / omega(i)
    return IntrinsicVolumeVector(n, mu)


def t_power_eval_crosscheck(k: int, j: int, lam) -> Tuple[ExactScalar, ExactScalar, bool]:
    """Value of t^k on S^j_lam two ways: tau expansion vs tube-volume oracle."""
    lam = as_scalar(lam)
    if not lam.is_rational() or lam.to_fraction() <= 0:
        raise ValueError("cross-check needs a positive rational curvature")
    route_a = t_power_in_tau(k, max(j, k)).evaluate(j, lam)
    q = lam.to_fraction()
    root = _exact_sqrt(q)
    if root is not None:
        mu_k = sphere_intrinsic_volumes(j, 1 / root)[k]
    else:
        # mu_k scales like radius^k
        mu_k = sphere_intrinsic_volumes(j, 1)[k] * lam.half_power(-k)
    route_b = mu_k * omega(k) * factorial(k) / PI ** k
    return route_a, route_b, route_a == route_b


def conversion_tables(order: int, lam=LAMBDA) -> Dict[str, List[List[ExactScalar]]]:
    """Rows k = 0..order: phi^k and t^k in tau, and t^k in phi."""
    phi_tau, t_tau, t_phi = [], [], []
    for k in range(order + 1):
        p = phi_in_tau(k, order, lam)
        t = t_power_in_tau(k, order, lam)
        tp = t_power_in_phi(k, order, lam)
        phi_tau.append([p.coeff(j) for j in range(order + 1)])
        t_tau.append([t.coeff(j) for j in range(order + 1)])
        t_phi.append([tp.coeff((j,)) for j in range(order + 1)])
    return {"phi_in_tau": phi_tau, "t_in_tau": t_tau, "t_in_phi": t_phi}
