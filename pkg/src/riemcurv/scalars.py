"""Exact scalars: rational combinations of pi^a * lambda^(b/2).

Rationals are :class:`fractions.Fraction`.  An :class:`ExactScalar` is a
finite sum ``sum c * pi^a * lambda^(b/2)`` with integer ``a`` and ``b``; the
lambda exponent is stored doubled so keys stay integral.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Tuple, Union

Key = Tuple[int, int]
Number = Union[int, Fraction]


class DomainError(ValueError):
    """A mathematically undefined request, e.g. inverting lambda = 0."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class ExactScalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Key, Fraction] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = _as_fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "ExactScalar":
        # caller guarantees no zero entries
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        q = _as_fraction(x)
        return cls._raw({(0, 0): q} if q else {})

    @classmethod
    def monomial(cls, coeff: Number = 1, pi_exp: int = 0, lambda_half_exp: int = 0) -> "ExactScalar":
        return cls({(pi_exp, lambda_half_exp): _as_fraction(coeff)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self._terms.get((0, 0), Fraction(0))

    def involves_lambda(self) -> bool:
        return any(b for _, b in self._terms)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ExactScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return ExactScalar._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((kb, cb),) = b.items()
            return ExactScalar._raw({(k[0] + kb[0], k[1] + kb[1]): c * cb for k, c in a.items()})
        if len(a) == 1:
            return other * self
        out: Dict[Key, Fraction] = {}
        for (pa, la), ca in a.items():
            for (pb, lb), cb in b.items():
                key = (pa + pb, la + lb)
                out[key] = out.get(key, 0) + ca * cb
        return ExactScalar._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse; only single-term scalars are invertible here."""
        if not self._terms:
            raise DomainError("division by zero scalar")
        if len(self._terms) != 1:
            raise DomainError(f"cannot invert non-monomial scalar {self}")
        ((p, l), c) = next(iter(self._terms.items()))
        return ExactScalar._raw({(-p, -l): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DomainError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def half_power(self, h: int) -> "ExactScalar":
        """Return ``self ** (h/2)``.

        Even ``h`` is an ordinary integer power.  Odd ``h`` needs a
        single-term scalar with a perfect-square positive rational part and
        even pi exponent; anything else is not representable.
        """
        if h % 2 == 0:
            return self ** (h // 2)
        if len(self._terms) != 1:
            raise DomainError(f"square root of non-monomial scalar {self} is not representable")
        ((p, l), c) = next(iter(self._terms.items()))
        root = _exact_sqrt(c)
        if root is None or p % 2:
            raise DomainError(f"square root of {self} is not representable")
        if l % 2:
            raise DomainError(f"square root of {self} needs a quarter power of lambda")
        return ExactScalar._raw({(p // 2, l // 2): root}) ** h

    def subs_lambda(self, value) -> "ExactScalar":
        """Substitute a value for the symbol lambda."""
        value = ExactScalar.coerce(value)
        out = ZERO
        for (p, l), c in self._terms.items():
            if l == 0:
                out = out + ExactScalar._raw({(p, 0): c})
            else:
                out = out + ExactScalar._raw({(p, 0): c}) * value.half_power(l)
        return out

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, ((p, l), c) in enumerate(sorted(self._terms.items())):
            piece = _render_term(abs(c), p, l)
            if i == 0:
                out = ("-" if c < 0 else "") + piece
            else:
                out += (" - " if c < 0 else " + ") + piece
        return out

    def __repr__(self) -> str:
        return f"ExactScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return ZERO
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        out = ZERO
        parts = re.split(r" ([+-]) ", text)
        signs = [sign] + [1 if s == "+" else -1 for s in parts[1::2]]
        for s, piece in zip(signs, parts[0::2]):
            out = out + _parse_term(piece) * s
        return out


def _render_term(c: Fraction, p: int, l: int) -> str:
    factors = []
    if p:
        factors.append("pi" if p == 1 else f"pi^{p}")
    if l:
        if l % 2:
            factors.append(f"lambda^({l}/2)")
        else:
            factors.append("lambda" if l == 2 else f"lambda^{l // 2}")
    if not factors:
        return str(c)
    if c == 1:
        return " * ".join(factors)
    return " * ".join([str(c)] + factors)


_FACTOR = re.compile(r"^(pi|lambda)(?:\^(-?\d+|\((-?\d+)/2\)))?$")


def _parse_term(piece: str) -> ExactScalar:
    coeff, p, l = Fraction(1), 0, 0
    for f in piece.split(" * "):
        m = _FACTOR.match(f)
        if m is None:
            coeff *= Fraction(f)
            continue
        name, exp, half = m.groups()
        if name == "pi":
            p += int(exp) if exp else 1
        elif half is not None:
            l += int(half)
        else:
            l += 2 * (int(exp) if exp else 1)
    return ExactScalar.monomial(coeff, p, l)


ZERO = ExactScalar._raw({})
ONE = ExactScalar._raw({(0, 0): Fraction(1)})
PI = ExactScalar._raw({(1, 0): Fraction(1)})
LAMBDA = ExactScalar._raw({(0, 2): Fraction(1)})


def as_scalar(x) -> ExactScalar:
    return ExactScalar.coerce(x)


# -- combinatorial constants ---------------------------------------------

def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.factorial(n)


@lru_cache(maxsize=None)
def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def gen_binomial(r, j: int) -> Fraction:
    """Generalized binomial coefficient r(r-1)...(r-j+1)/j!."""
    if j < 0:
        return Fraction(0)
    r = _as_fraction(r)
    out = Fraction(1)
    for i in range(j):
        out = out * (r - i) / (i + 1)
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def omega(k: int) -> ExactScalar:
    """Volume of the unit ball in R^k."""
    if k < 0:
        raise ValueError("omega_k needs k >= 0")
    m = k // 2
    if k % 2 == 0:
        return ExactScalar.monomial(Fraction(1, math.factorial(m)), m, 0)
    return ExactScalar.monomial(Fraction(2 ** (m + 1), double_factorial(k)), m, 0)
