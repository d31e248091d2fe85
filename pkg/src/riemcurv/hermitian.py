"""Hermitian curvature measures on complex space forms (infinite-rank model).

Elements live in the angular bases Delta_{kq} ("D") or Delta~_{kq} ("TD"),
0 <= 2q <= k.  Conversions to the C_{kp} basis depend on the holomorphic
curvature parameter ``lam`` (4*lam is the holomorphic sectional curvature),
which may be the symbol lambda or a nonzero exact value.

Two independent routes are provided wherever the theory allows one:

* Delta~ <-> C through the closed "common form" formulas, and through the
  O/P generating-function maps and the bar coordinates
  xibar = xi^2, etabar = eta/lam - xi^2;
* the t_lam action through its closed formula, and by transporting the
  series action on C_{kp} through the basis change.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .riemannian import XI_ETA, RElement, lk_bar, t_act
from .scalars import (
    LAMBDA,
    ONE,
    PI,
    ZERO,
    DomainError,
    ExactScalar,
    as_scalar,
    binomial,
    double_factorial,
    factorial,
)
from .series import Alphabet, GradedSeries, binomial_power, substitute

ZY = Alphabet.of(z=2, y=2)
BAR = Alphabet.of(xibar=2, etabar=2)

BASES = ("D", "TD")

Key = Tuple[int, int]


class HermitianElement:
    __slots__ = ("coeffs", "order", "basis")

    def __init__(self, coeffs: Dict[Key, ExactScalar] | None = None, order: int = 0, basis: str = "TD"):
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        self.order = order
        self.basis = basis
        self.coeffs: Dict[Key, ExactScalar] = {}
        for (k, q), c in (coeffs or {}).items():
            _check_kq(k, q)
            c = as_scalar(c)
            if c and k <= order:
                self.coeffs[(k, q)] = c

    @classmethod
    def basis_element(cls, k: int, q: int, order: int | None = None, basis: str = "TD"):
        return cls({(k, q): ONE}, k if order is None else order, basis)

    def coeff(self, k: int, q: int) -> ExactScalar:
        _check_kq(k, q)
        return self.coeffs.get((k, q), ZERO)

    def items(self) -> Iterator[Tuple[int, int, ExactScalar]]:
        for (k, q), c in sorted(self.coeffs.items()):
            yield k, q, c

    def degree_part(self, k: int) -> Dict[int, ExactScalar]:
        return {q: c for (kk, q), c in self.coeffs.items() if kk == k}

    def degrees(self) -> List[int]:
        return sorted({k for k, _ in self.coeffs})

    def _combine(self, other: "HermitianElement", sign: int) -> "HermitianElement":
        if self.basis != other.basis:
            raise ValueError(f"cannot combine {self.basis} and {other.basis} elements")
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            c = c if sign > 0 else -c
            out[key] = out[key] + c if key in out else c
        return HermitianElement(out, min(self.order, other.order), self.basis)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        c = as_scalar(c)
        return HermitianElement({k: v * c for k, v in self.coeffs.items()}, self.order, self.basis)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "HermitianElement":
        return HermitianElement(self.coeffs, min(order, self.order), self.basis)

    def map_coeffs(self, fn) -> "HermitianElement":
        return HermitianElement({k: fn(c) for k, c in self.coeffs.items()}, self.order, self.basis)

    def first_difference(self, other: "HermitianElement"):
        """First (k, q) where the elements differ below the common order, or None."""
        if self.basis != other.basis:
            raise ValueError("elements are in different bases")
        n = min(self.order, other.order)
        for key in sorted(set(self.coeffs) | set(other.coeffs)):
            if key[0] > n:
                continue
            a, b = self.coeffs.get(key, ZERO), other.coeffs.get(key, ZERO)
            if a != b:
                return key, a, b
        return None

    def __eq__(self, other):
        if not isinstance(other, HermitianElement):
            return NotImplemented
        return self.basis == other.basis and self.first_difference(other) is None

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.basis}[{k},{q}]" for k, q, c in self.items())

    def __repr__(self):
        return f"HermitianElement({self}; N={self.order})"


def _check_kq(k, q):
    if k < 0 or q < 0 or 2 * q > k:
        raise ValueError(f"hermitian index needs 0 <= 2q <= k, got ({k}, {q})")


def _ceil_half(k: int) -> int:
    return (k + 1) // 2


def _invertible(lam) -> ExactScalar:
    lam = as_scalar(lam)
    if lam.is_zero():
        raise DomainError("the C <-> Delta~ conversion is singular at lambda = 0")
    if not lam.is_monomial():
        raise DomainError(f"lambda = {lam} must be a single term to invert")
    return lam


# -- Delta <-> Delta~ -----------------------------------------------------

def delta_to_tilde(e: HermitianElement) -> HermitianElement:
    """Rewrite a Delta-basis element in the Delta~ basis.

    Inverts Delta~_{kl} = sum_j C(l+j, l) Delta_{k,l+j}, i.e.
    Delta_{kj} = sum_l (-1)^l C(l+j, j) Delta~_{k,l+j}.
    """
    if e.basis != "D":
        raise ValueError("delta_to_tilde expects a D-basis element")
    out: Dict[Key, ExactScalar] = {}
    for k, j, c in e.items():
        for i in range(j, k // 2 + 1):
            v = c * ((-1) ** (i - j) * binomial(i, j))
            out[(k, i)] = out[(k, i)] + v if (k, i) in out else v
    return HermitianElement(out, e.order, "TD")


def tilde_to_delta(e: HermitianElement) -> HermitianElement:
    if e.basis != "TD":
        raise ValueError("tilde_to_delta expects a TD-basis element")
    out: Dict[Key, ExactScalar] = {}
    for k, l, c in e.items():
        for i in range(l, k // 2 + 1):
            v = c * binomial(i, l)
            out[(k, i)] = out[(k, i)] + v if (k, i) in out else v
    return HermitianElement(out, e.order, "D")


# -- generating functions and the O, P maps ------------------------------

def o_coefficient(m: int, p: int) -> ExactScalar:
    c = Fraction(binomial(m + p, p), (2 * p + 1) * binomial(2 * p, p) * binomial(2 * m, m))
    return ExactScalar.monomial(c, m + p)


def p_coefficient(m: int, p: int) -> ExactScalar:
    num = (2 * m + 2 * p + 1) * binomial(2 * m + 2 * p, m + p) * binomial(m + p, p)
    den = (2 * m + 1) * (2 * p + 1) * binomial(2 * m, m) * binomial(2 * p, p) * 4 ** (m + p)
    return ExactScalar.monomial(Fraction(num, den), m + p)


def _diagonal(f: GradedSeries, coefficient) -> GradedSeries:
    if f.alphabet != ZY:
        raise ValueError(f"expected a series over {ZY.names}")
    return GradedSeries(BAR, f.order, {(m, p): c * coefficient(m, p) for (m, p), c in f.items()})


def O_transform(f: GradedSeries) -> GradedSeries:
    """z^m y^p -> pi^(m+p) C(m+p,p) / ((2p+1) C(2p,p) C(2m,m)) xibar^m etabar^p."""
    return _diagonal(f, o_coefficient)


def P_transform(f: GradedSeries) -> GradedSeries:
    """z^m y^p -> (pi/4)^(m+p) (2m+2p+1) C(2m+2p,m+p) C(m+p,p) / ((2m+1)(2p+1) C(2m,m) C(2p,p)) xibar^m etabar^p."""
    return _diagonal(f, p_coefficient)


def _four_var_power(name: str, r, order: int) -> GradedSeries:
    # (1 - 4 v)^r
    return binomial_power(GradedSeries.var(ZY, name, order, 4), r)


def genfun_g(k: int, order: int) -> GradedSeries:
    """C(2k,k) z^k (1-4z)^(-k-1/2) (1-4y)^(-3/2)."""
    z = GradedSeries.var(ZY, "z", order)
    return (
        z ** k
        * _four_var_power("z", -k - Fraction(1, 2), order)
        * _four_var_power("y", Fraction(-3, 2), order)
    ).scale(binomial(2 * k, k))


def genfun_h(k: int, order: int) -> GradedSeries:
    """z^k (1-4z)^(-k-3/2) (1-4y)^(-3/2)."""
    z = GradedSeries.var(ZY, "z", order)
    return z ** k * _four_var_power("z", -k - Fraction(3, 2), order) * _four_var_power("y", Fraction(-3, 2), order)


def L_map(f: GradedSeries) -> HermitianElement:
    """z^m y^p -> m! p! Delta~_{2m+2p, p}."""
    return HermitianElement(
        {(2 * m + 2 * p, p): c * (factorial(m) * factorial(p)) for (m, p), c in f.items()}, f.order, "TD"
    )


def M_map(f: GradedSeries) -> HermitianElement:
    """z^m y^p -> m! p! Delta~_{2m+2p+1, p}."""
    return HermitianElement(
        {(2 * m + 2 * p + 1, p): c * (factorial(m) * factorial(p)) for (m, p), c in f.items()},
        f.order + 1,
        "TD",
    )


def _rescale_zy(f: GradedSeries) -> GradedSeries:
    # f(lam z / (4 pi), lam y / (4 pi)) with symbolic lam
    s = ExactScalar.monomial(Fraction(1, 4), -1, 2)
    return substitute(f, {"z": GradedSeries.var(ZY, "z", f.order, s), "y": GradedSeries.var(ZY, "y", f.order, s)}, ZY)


def _at_lambda(e: HermitianElement, lam) -> HermitianElement:
    lam = as_scalar(lam)
    if lam == LAMBDA:
        return e
    return e.map_coeffs(lambda c: c.subs_lambda(lam))


def lk_in_tilde_delta(k: int, lam=LAMBDA, order: int = 12) -> HermitianElement:
    """Delta~ expansion of lk_bar(k) from the exponential generating functions."""
    if k < 0:
        raise ValueError("k must be >= 0")
    i = k // 2
    if k % 2 == 0:
        f = _rescale_zy(genfun_g(i, order))
        e = L_map(f.scale(ExactScalar.monomial(4 ** i, 0, -2 * i)))
    else:
        if order < 1:
            return HermitianElement({}, order, "TD")
        f = _rescale_zy(genfun_h(i, order - 1))
        e = M_map(f.scale(ExactScalar.monomial(Fraction(2 * 16 ** i), -1, -2 * i)))
    return _at_lambda(e, lam)


# -- Delta~ <-> C ----------------------------------------------------------

def c_in_tilde_entry(k: int, j: int, p: int, lam) -> ExactScalar:
    """Coefficient of Delta~_{kp} in C^lam_{kj}."""
    if p > j:
        return ZERO
    c = Fraction(binomial(j, p) * factorial(k - 2 * p) * factorial(2 * p + 1) * 2 ** _ceil_half(k), double_factorial(k))
    return ExactScalar.monomial(c, -_ceil_half(k)) * as_scalar(lam) ** j


def tilde_in_c_entry(k: int, p: int, j: int, lam) -> ExactScalar:
    """Coefficient of C^lam_{kj} in Delta~_{kp}."""
    if j > p:
        return ZERO
    lam = _invertible(lam)
    c = Fraction(
        double_factorial(k) * (-1) ** (p - j) * binomial(p, j),
        factorial(k - 2 * p) * factorial(2 * p + 1) * 2 ** _ceil_half(k),
    )
    return ExactScalar.monomial(c, _ceil_half(k)) * lam ** (-j)


def tilde_from_C(e: RElement, lam=LAMBDA, order: int | None = None) -> HermitianElement:
    """Express a C-basis element in the Delta~ basis (lam != 0)."""
    _invertible(lam)
    n = e.order if order is None else min(order, e.order)
    out: Dict[Key, ExactScalar] = {}
    for k, j, c in e.items():
        if k > n:
            continue
        for p in range(j + 1):
            v = c * c_in_tilde_entry(k, j, p, lam)
            out[(k, p)] = out[(k, p)] + v if (k, p) in out else v
    return HermitianElement(out, n, "TD")


def C_from_tilde(e: HermitianElement, lam=LAMBDA, order: int | None = None) -> RElement:
    """Express a Delta~-basis element in the C basis (lam != 0)."""
    if e.basis != "TD":
        raise ValueError("C_from_tilde expects a TD-basis element")
    _invertible(lam)
    n = e.order if order is None else min(order, e.order)
    out: Dict[Key, ExactScalar] = {}
    for k, p, c in e.items():
        if k > n:
            continue
        for j in range(p + 1):
            v = c * tilde_in_c_entry(k, p, j, lam)
            out[(k, j)] = out[(k, j)] + v if (k, j) in out else v
    return RElement.from_coeffs(out, n)


def c_in_tilde_matrix(k: int, lam=LAMBDA) -> List[List[ExactScalar]]:
    """Rows j: C_{kj} in terms of Delta~_{kp}, columns p."""
    top = k // 2
    return [[c_in_tilde_entry(k, j, p, lam) for p in range(top + 1)] for j in range(top + 1)]


def tilde_in_c_matrix(k: int, lam=LAMBDA) -> List[List[ExactScalar]]:
    """Rows p: Delta~_{kp} in terms of C_{kj}, columns j."""
    top = k // 2
    return [[tilde_in_c_entry(k, p, j, lam) for j in range(top + 1)] for p in range(top + 1)]


def matmul(a: List[List[ExactScalar]], b: List[List[ExactScalar]]) -> List[List[ExactScalar]]:
    n, m = len(a), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(len(b)):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def is_lower_triangular_nonsingular(a: List[List[ExactScalar]]) -> bool:
    n = len(a)
    for i in range(n):
        if a[i][i].is_zero():
            return False
        for j in range(i + 1, n):
            if not a[i][j].is_zero():
                return False
    return True


def lk_component_matrix(degree: int, lam=LAMBDA) -> List[List[ExactScalar]]:
    """Degree-``degree`` parts of lk_bar(j), j = degree mod 2, ..., degree, in Delta~.

    Row r is lk_bar(parity + 2r), column p is Delta~_{degree,p}.
    """
    rows = []
    for j in range(degree % 2, degree + 1, 2):
        e = lk_in_tilde_delta(j, lam, degree).degree_part(degree)
        rows.append([e.get(p, ZERO) for p in range(degree // 2 + 1)])
    return rows


def is_reflected_triangular(a: List[List[ExactScalar]]) -> bool:
    """Anti-triangular with nonzero anti-diagonal: a[r][c] = 0 when r + c > n-1."""
    n = len(a)
    for r in range(n):
        if a[r][n - 1 - r].is_zero():
            return False
        for c in range(n - r, n):
            if not a[r][c].is_zero():
                return False
    return True


def tilde_to_C_via_bar(e: HermitianElement, lam=LAMBDA) -> RElement:
    """Delta~ -> C through O (even degrees) or (pi xi / 2) P (odd degrees) and bar coordinates."""
    if e.basis != "TD":
        raise ValueError("expects a TD-basis element")
    lam = _invertible(lam)
    n = e.order
    xi = GradedSeries.var(XI_ETA, "xi", n)
    bar_images = {
        "xibar": xi * xi,
        "etabar": GradedSeries.var(XI_ETA, "eta", n, lam.inverse()) - xi * xi,
    }
    even: Dict[Tuple[int, int], ExactScalar] = {}
    odd: Dict[Tuple[int, int], ExactScalar] = {}
    for k, p, c in e.items():
        m = (k - 2 * p) // 2
        # L^{-1} and M^{-1}: Delta~ -> z^m y^p / (m! p!)
        v = c * Fraction(1, factorial(m) * factorial(p))
        (even if k % 2 == 0 else odd)[(m, p)] = v
    total = GradedSeries.zero(XI_ETA, n)
    if even:
        f = O_transform(GradedSeries(ZY, n, even))
        total = total + substitute(f, bar_images, XI_ETA)
    if odd:
        f = P_transform(GradedSeries(ZY, n, odd))
        total = total + (xi * substitute(f, bar_images, XI_ETA)).scale(ExactScalar.monomial(Fraction(1, 2), 1))
    return RElement(total)


# -- the t_lam action ----------------------------------------------------------

def t_lambda_closed_terms(k: int, p: int, lam, order: int) -> Dict[Key, ExactScalar]:
    """t_lam * Delta~_{kp} from the closed formula, degrees <= order."""
    lam = as_scalar(lam)
    # 2 omega_{k-1} (k-1)!! / (omega_k k!!) is 2/pi for even k, 1 for odd k
    parity = ExactScalar.monomial(2, -1) if k % 2 == 0 else ONE
    pref = parity * Fraction(double_factorial(k), factorial(k - 2 * p) * factorial(2 * p + 1))
    step = lam * ExactScalar.monomial(Fraction(1, 8), -1)
    out: Dict[Key, ExactScalar] = {}
    l = 0
    while k + 2 * l + 1 <= order:
        deg = k + 2 * l + 1
        weight = pref * step ** l * binomial(2 * l, l)
        for q in range(p, p + l + 1):
            c = Fraction(factorial(deg - 2 * q) * factorial(2 * q + 1) * binomial(l, q - p), double_factorial(deg))
            if c:
                out[(deg, q)] = weight * c
        l += 1
    return out


def t_lambda_act_closed(e: HermitianElement, lam=LAMBDA, order: int | None = None) -> HermitianElement:
    if e.basis != "TD":
        raise ValueError("t_lambda_act_closed expects a TD-basis element")
    n = e.order if order is None else min(order, e.order)
    out: Dict[Key, ExactScalar] = {}
    for k, p, c in e.items():
        for key, v in t_lambda_closed_terms(k, p, lam, n).items():
            v = c * v
            out[key] = out[key] + v if key in out else v
    return HermitianElement(out, n, "TD")


def t_lambda_act_via_C(e: HermitianElement, lam=LAMBDA, order: int | None = None) -> HermitianElement:
    """Transport the series action through Delta~ -> C -> t -> Delta~."""
    if e.basis != "TD":
        raise ValueError("t_lambda_act_via_C expects a TD-basis element")
    n = e.order if order is None else min(order, e.order)
    c_form = C_from_tilde(e.truncate(n), lam)
    return tilde_from_C(t_act(c_form), lam)


__all__ = [
    "BAR",
    "ZY",
    "HermitianElement",
    "C_from_tilde",
    "L_map",
    "M_map",
    "O_transform",
    "P_transform",
    "delta_to_tilde",
    "genfun_g",
    "genfun_h",
    "lk_bar",
    "lk_component_matrix",
    "lk_in_tilde_delta",
    "t_lambda_act_closed",
    "t_lambda_act_via_C",
    "tilde_from_C",
    "tilde_to_C_via_bar",
    "tilde_to_delta",
]
