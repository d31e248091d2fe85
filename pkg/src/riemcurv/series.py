"""Sparse truncated power series over a weighted alphabet.

A :class:`GradedSeries` carries a truncation order ``N``: every coefficient of
weighted degree ``<= N`` is exact, nothing above ``N`` is stored.  Products
and substitutions truncate at the smaller of the operand orders.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .scalars import ZERO, ExactScalar, as_scalar, factorial, gen_binomial

Exps = Tuple[int, ...]


class AlphabetMismatch(ValueError):
    pass


class TruncationError(ValueError):
    """Asked for something the truncation order cannot determine."""


@dataclass(frozen=True)
class Alphabet:
    vars: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.vars]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if any(w <= 0 for _, w in self.vars):
            raise ValueError("variable weights must be positive")

    @classmethod
    def of(cls, **weights: int) -> "Alphabet":
        return cls(tuple(weights.items()))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.vars)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(w for _, w in self.vars)

    def __len__(self):
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self.names}") from None

    def degree(self, exps: Exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def exps(self, monomial) -> Exps:
        """Normalize a tuple or a ``{name: exp}`` mapping to an exponent tuple."""
        if isinstance(monomial, Mapping):
            out = [0] * len(self)
            for name, e in monomial.items():
                out[self.index(name)] = int(e)
            exps = tuple(out)
        else:
            exps = tuple(int(e) for e in monomial)
            if not exps:
                exps = (0,) * len(self)
            if len(exps) != len(self):
                raise ValueError(f"monomial {monomial} has wrong arity for {self.names}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {monomial}")
        return exps

    def monomials(self, order: int) -> Iterator[Exps]:
        """All exponent vectors of weighted degree <= order."""

        def rec(i, budget):
            if i == len(self):
                yield ()
                return
            w = self.weights[i]
            for e in range(budget // w + 1):
                for rest in rec(i + 1, budget - e * w):
                    yield (e,) + rest

        return rec(0, order)


def _sort_key(deg_exps):
    deg, exps = deg_exps
    return (deg, tuple(-e for e in exps))


class GradedSeries:
    __slots__ = ("alphabet", "order", "_terms")

    def __init__(self, alphabet: Alphabet, order: int, terms: Mapping | None = None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.alphabet = alphabet
        self.order = order
        clean: Dict[Exps, ExactScalar] = {}
        if terms:
            for m, c in terms.items():
                exps = alphabet.exps(m)
                if alphabet.degree(exps) > order:
                    continue
                c = as_scalar(c)
                if c:
                    clean[exps] = clean[exps] + c if exps in clean else c
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean

    @classmethod
    def _raw(cls, alphabet, order, terms):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.order = order
        obj._terms = terms
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, order: int) -> "GradedSeries":
        return cls._raw(alphabet, order, {})

    @classmethod
    def constant(cls, alphabet: Alphabet, order: int, c=1) -> "GradedSeries":
        return cls(alphabet, order, {(0,) * len(alphabet): c})

    @classmethod
    def one(cls, alphabet: Alphabet, order: int) -> "GradedSeries":
        return cls.constant(alphabet, order, 1)

    @classmethod
    def var(cls, alphabet: Alphabet, name: str, order: int, coeff=1) -> "GradedSeries":
        exps = [0] * len(alphabet)
        exps[alphabet.index(name)] = 1
        return cls(alphabet, order, {tuple(exps): coeff})

    @classmethod
    def monomial(cls, alphabet: Alphabet, monomial, order: int, coeff=1) -> "GradedSeries":
        return cls(alphabet, order, {alphabet.exps(monomial): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Exps, ExactScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exps, ExactScalar]]:
        """Terms in graded-lex order."""
        keyed = sorted(((self.alphabet.degree(m), m) for m in self._terms), key=_sort_key)
        for _, m in keyed:
            yield m, self._terms[m]

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_of(self, monomial) -> int:
        return self.alphabet.degree(self.alphabet.exps(monomial))

    def min_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return min(self.alphabet.degree(m) for m in self._terms)

    def coeff(self, monomial) -> ExactScalar:
        exps = self.alphabet.exps(monomial)
        deg = self.alphabet.degree(exps)
        if deg > self.order:
            raise TruncationError(f"degree {deg} exceeds truncation order {self.order}")
        return self._terms.get(exps, ZERO)

    def constant_term(self) -> ExactScalar:
        return self._terms.get((0,) * len(self.alphabet), ZERO)

    def truncate(self, order: int) -> "GradedSeries":
        order = min(order, self.order)
        deg = self.alphabet.degree
        return GradedSeries._raw(
            self.alphabet, order, {m: c for m, c in self._terms.items() if deg(m) <= order}
        )

    def homogeneous_part(self, degree: int) -> Dict[Exps, ExactScalar]:
        if degree > self.order:
            raise TruncationError(f"degree {degree} exceeds truncation order {self.order}")
        deg = self.alphabet.degree
        return {m: c for m, c in self._terms.items() if deg(m) == degree}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "GradedSeries"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.names} vs {other.alphabet.names}")

    def _lift(self, other):
        if isinstance(other, GradedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ExactScalar)):
            return GradedSeries.constant(self.alphabet, self.order, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.truncate(order)._terms)
        deg = self.alphabet.degree
        for m, c in other._terms.items():
            if deg(m) > order:
                continue
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedSeries._raw(self.alphabet, order, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries._raw(self.alphabet, self.order, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedSeries":
        c = as_scalar(c)
        if not c:
            return GradedSeries.zero(self.alphabet, self.order)
        return GradedSeries._raw(self.alphabet, self.order, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        if not isinstance(other, GradedSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        deg = self.alphabet.degree
        a = [(deg(m), m, c) for m, c in self._terms.items()]
        b = sorted(((deg(m), m, c) for m, c in other._terms.items()), key=lambda t: t[0])
        out: Dict[Exps, ExactScalar] = {}
        for da, ma, ca in a:
            budget = order - da
            if budget < 0:
                continue
            for db, mb, cb in b:
                if db > budget:
                    break
                key = tuple(x + y for x, y in zip(ma, mb))
                v = ca * cb
                if key in out:
                    out[key] = out[key] + v
                else:
                    out[key] = v
        return GradedSeries._raw(self.alphabet, order, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = GradedSeries.one(self.alphabet, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coeffs(self, fn) -> "GradedSeries":
        return GradedSeries(self.alphabet, self.order, {m: fn(c) for m, c in self._terms.items()})

    def euler_op(self, name: str, k: int) -> "GradedSeries":
        """Apply v^k d^k/dv^k, which scales v^e by e!/(e-k)!."""
        i = self.alphabet.index(name)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e >= k:
                out[m] = c * (factorial(e) // factorial(e - k))
        return GradedSeries._raw(self.alphabet, self.order, out)

    # -- comparison -------------------------------------------------------

    def first_difference(self, other: "GradedSeries", order: Optional[int] = None):
        """First monomial (graded-lex) where the two series differ, or None.

        Returns ``(exps, self_coeff, other_coeff)``.
        """
        self._check(other)
        bound = min(self.order, other.order)
        if order is not None:
            bound = min(bound, order)
        deg = self.alphabet.degree
        monos = {m for m in self._terms if deg(m) <= bound} | {m for m in other._terms if deg(m) <= bound}
        for _, m in sorted(((deg(m), m) for m in monos), key=_sort_key):
            a, b = self._terms.get(m, ZERO), other._terms.get(m, ZERO)
            if a != b:
                return m, a, b
        return None

    def equal_to_order(self, other: "GradedSeries", order: Optional[int] = None) -> bool:
        return self.first_difference(other, order) is None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = GradedSeries.constant(self.alphabet, self.order, other)
        if not isinstance(other, GradedSeries):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        return self.first_difference(other) is None

    __hash__ = None

    # -- rendering / serialization -----------------------------------------

    def _mono_str(self, m: Exps) -> str:
        parts = []
        for (name, _), e in zip(self.alphabet.vars, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __str__(self):
        if not self._terms:
            return f"0 + O({self.order + 1})"
        pieces = [f"({c})*{self._mono_str(m)}" for m, c in self.items()]
        return " + ".join(pieces) + f" + O({self.order + 1})"

    def __repr__(self):
        return f"GradedSeries<{','.join(self.alphabet.names)}; N={self.order}; {len(self)} terms>"

    def to_dict(self) -> dict:
        return {
            "alphabet": [{"name": n, "weight": w} for n, w in self.alphabet.vars],
            "order": self.order,
            "terms": [
                {
                    "monomial": {n: e for (n, _), e in zip(self.alphabet.vars, m) if e},
                    "coeff": str(c),
                }
                for m, c in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradedSeries":
        alphabet = Alphabet(tuple((v["name"], int(v["weight"])) for v in data["alphabet"]))
        terms = {}
        for t in data["terms"]:
            terms[alphabet.exps(t["monomial"])] = ExactScalar.parse(t["coeff"])
        return cls(alphabet, int(data["order"]), terms)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kw)

    @classmethod
    def from_json(cls, text: str) -> "GradedSeries":
        return cls.from_dict(json.loads(text))


def binomial_power(u: GradedSeries, r) -> GradedSeries:
    """(1 - u)^r for rational r, as sum_j (-1)^j C(r, j) u^j.

    ``u`` must have zero constant term.
    """
    if u.constant_term():
        raise ValueError("binomial_power needs a series with zero constant term")
    result = GradedSeries.one(u.alphabet, u.order)
    low = u.min_degree()
    if low is None:
        return result
    power = result
    for j in range(1, u.order // low + 1):
        power = power * u
        if power.is_zero():
            break
        c = gen_binomial(r, j)
        if c:
            result = result + power.scale(c if j % 2 == 0 else -c)
    return result


def substitute(
    f: GradedSeries,
    images: Mapping[str, GradedSeries],
    target: Optional[Alphabet] = None,
    order: Optional[int] = None,
) -> GradedSeries:
    """Evaluate ``f`` at the given images, as a ring homomorphism.

    Variables of ``f`` missing from ``images`` map to the same-named variable
    of ``target``.  Each image must have minimal weighted degree at least the
    weight of the variable it replaces, so truncation stays exact.
    """
    if target is None:
        if not images:
            raise ValueError("substitute needs images or a target alphabet")
        target = next(iter(images.values())).alphabet
    bound = f.order
    used = [any(m[i] for m in f._terms) for i in range(len(f.alphabet))]
    full = []
    for (name, w), needed in zip(f.alphabet.vars, used):
        img = images.get(name)
        if img is None:
            if name not in target.names and not needed:
                img = GradedSeries.zero(target, f.order)
            else:
                img = GradedSeries.var(target, name, f.order)
        if img.alphabet != target:
            raise AlphabetMismatch(f"image of {name} lives in {img.alphabet.names}, not {target.names}")
        low = img.min_degree()
        if low is not None and low < w:
            raise ValueError(f"image of {name} has degree {low} < weight {w}; truncation would be lost")
        bound = min(bound, img.order)
        full.append(img)
    if order is not None:
        bound = min(bound, order)

    powers = [[GradedSeries.one(target, bound)] for _ in full]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * full[i].truncate(bound))
        return cache[e]

    prefix: Dict[Exps, GradedSeries] = {(): GradedSeries.one(target, bound)}

    def product(exps):
        if exps in prefix:
            return prefix[exps]
        head = product(exps[:-1])
        e = exps[-1]
        val = head if e == 0 else head * power(len(exps) - 1, e)
        prefix[exps] = val
        return val

    result = GradedSeries.zero(target, bound)
    for m, c in f.items():
        if f.alphabet.degree(m) > bound:
            continue
        result = result + product(m).scale(c)
    return result


def monomial_exps(alphabet: Alphabet, **exps: int) -> Exps:
    return alphabet.exps(exps)


def series_sum(items: Iterable[GradedSeries], alphabet: Alphabet, order: int) -> GradedSeries:
    total = GradedSeries.zero(alphabet, order)
    for s in items:
        total = total + s
    return total


__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "GradedSeries",
    "TruncationError",
    "binomial_power",
    "substitute",
    "series_sum",
    "monomial_exps",
]
