"""Identity suites run by ``riemcurv verify``.

Each suite yields :class:`Check` records; a failing check names the first
coefficient where the two sides disagree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List

from . import hermitian as H
from . import immersion as I
from . import riemannian as R
from . import sphere as S
from .scalars import LAMBDA, ExactScalar, gen_binomial
from .series import GradedSeries, binomial_power


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.detail}]" if self.detail and not self.passed else ""
        return f"{status} {self.suite}: {self.name}{tail}"


def _series_check(suite, name, lhs: GradedSeries, rhs: GradedSeries) -> Check:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Check(suite, name, True)
    m, a, b = diff
    return Check(suite, name, False, f"monomial {m}: {a} != {b}")


def _elem_check(suite, name, lhs, rhs) -> Check:
    if lhs == rhs:
        return Check(suite, name, True)
    if hasattr(lhs, "first_difference"):
        key, a, b = lhs.first_difference(rhs)
        return Check(suite, name, False, f"{key}: {a} != {b}")
    return Check(suite, name, False, f"{lhs} != {rhs}")


def lk_recursion(order: int = 12) -> Iterable[Check]:
    for k in range(order - 1):
        lhs = R.t_act(R.lk_bar(k, order)).series
        yield _series_check("lk-recursion", f"t*lk_bar({k}) = lk_bar({k + 1})", lhs, R.lk_bar(k + 1, order).series)


def t_power(order: int = 12) -> Iterable[Check]:
    rng = random.Random(7)
    for i in range(5):
        coeffs = {}
        for _ in range(4):
            k = rng.randrange(order // 2 + 1)
            p = rng.randrange(k // 2 + 1)
            coeffs[(k, p)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        e = R.RElement.from_coeffs(coeffs, order)
        it = e
        for _ in range(i):
            it = R.t_act(it)
        yield _series_check("t-power", f"t^{i} = iterated t on random element", R.t_power_act(i, e).series, it.series)


def t_in_phi(order: int = 12, kmax: int = 8) -> Iterable[Check]:
    for k in range(min(kmax, order) + 1):
        series_form = S.t_power_in_phi(k, order)
        yield _series_check(
            "t-in-phi", f"t^{k} in phi: closed vs expanded", series_form, S.t_power_in_phi_explicit(k, order)
        )
        yield _elem_check(
            "t-in-phi", f"t^{k}: phi route = tau formula", S.phi_series_to_tau(series_form), S.t_power_in_tau(k, order)
        )


def t_tau_transport(order: int = 12, kmax: int = 8) -> Iterable[Check]:
    for k in range(min(kmax, order - 1) + 1):
        yield _elem_check(
            "t-tau-transport",
            f"t * t^{k} = t^{k + 1} on tau",
            S.t_act_tau(S.t_power_in_tau(k, order)),
            S.t_power_in_tau(k + 1, order),
        )
        q = GradedSeries.monomial(S.X, (k,), order)
        yield _elem_check("t-tau-transport", f"poly_in_t(x^{k}) = t^{k}", S.poly_in_t_to_tau(q), S.t_power_in_tau(k, order))


def immersion(order: int = 12, kmax: int = 10) -> Iterable[Check]:
    for k in range(min(kmax, order) + 1):
        for p in range(k // 2 + 1):
            e = R.basis_element(k, p, order)
            back = I.totally_geodesic_specialize(I.immersion_pullback(e))
            yield _series_check("immersion", f"geodesic specialization of pullback C[{k},{p}]", back.series, e.series)
    for k in range(9):
        n = k + 10
        pulled = I.immersion_pullback(R.basis_element(k, 0, n))
        ok = all(
            pulled.coeff(k + 2 * j, 0, j) == ExactScalar.coerce(gen_binomial(Fraction(k, 2) + j, j) / 4 ** j)
            for j in range(6)
        )
        yield Check("immersion", f"pullback coefficients of C[{k},0], j <= 5", ok)


def lk_invariance(order: int = 12, kmax: int = 8) -> Iterable[Check]:
    for k in range(min(kmax, order) + 1):
        yield Check("lk-invariance", f"lk_bar({k}) is immersion invariant", I.lk_invariance_check(k, order))


def sphere_templates(order: int = 12) -> Iterable[Check]:
    t1 = S.t_power_in_tau(1, 3).evaluate(3, 1)
    yield Check("sphere-templates", "t(S^3, lambda=1) = 6", t1 == 6, f"got {t1}")
    t2 = S.t_power_in_tau(2, 2).evaluate(2, 1)
    yield Check("sphere-templates", "t^2(S^2, lambda=1) = 8", t2 == 8, f"got {t2}")
    for lam in (1, 4):
        for j in range(9):
            for k in range(j + 1):
                a, b, ok = S.t_power_eval_crosscheck(k, j, lam)
                yield Check("sphere-templates", f"t^{k}(S^{j}, lambda={lam}) tau route = tube oracle", ok, f"{a} vs {b}")
    for k in range(7):
        for j in range(7):
            v = S.tau_eval(k, j, LAMBDA)
            want = LAMBDA.half_power(-k) * 2 ** (k + 1) if k == j else 0
            yield Check("sphere-templates", f"tau_{k}(S^{j})", v == want, f"got {v}")


def hermitian_basis(order: int = 12) -> Iterable[Check]:
    for k in range(order + 1):
        prod = H.matmul(H.c_in_tilde_matrix(k), H.tilde_in_c_matrix(k))
        n = k // 2 + 1
        ident = all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
        yield Check("hermitian-basis", f"degree {k}: C->TD->C matrices are inverse", ident)
        yield Check(
            "hermitian-basis",
            f"degree {k}: conversion matrices triangular, nonzero diagonal",
            H.is_lower_triangular_nonsingular(H.c_in_tilde_matrix(k))
            and H.is_lower_triangular_nonsingular(H.tilde_in_c_matrix(k)),
        )
        yield Check(
            "hermitian-basis",
            f"degree {k}: lk_bar components are a reflected triangular basis",
            H.is_reflected_triangular(H.lk_component_matrix(k)),
        )
        for p in range(k // 2 + 1):
            e = H.HermitianElement.basis_element(k, p, order)
            yield _elem_check("hermitian-basis", f"TD[{k},{p}] -> C -> TD", H.tilde_from_C(H.C_from_tilde(e)), e)
            yield _series_check(
                "hermitian-basis",
                f"TD[{k},{p}] common form = bar-coordinate form",
                H.C_from_tilde(e).series,
                H.tilde_to_C_via_bar(e).series,
            )
            d = H.HermitianElement.basis_element(k, p, order, "D")
            yield _elem_check("hermitian-basis", f"D[{k},{p}] -> TD -> D", H.tilde_to_delta(H.delta_to_tilde(d)), d)


def lk_hermitian_routes(order: int = 12, kmax: int = 8) -> Iterable[Check]:
    for k in range(kmax + 1):
        yield _elem_check(
            "lk-hermitian-routes",
            f"lk_bar({k}): generating functions = C-basis conversion",
            H.lk_in_tilde_delta(k, LAMBDA, order),
            H.tilde_from_C(R.lk_bar(k, order)),
        )


def op_transforms(order: int = 12, samples: int = 20) -> Iterable[Check]:
    s = H.BAR
    u = GradedSeries(s, order, {(1, 0): ExactScalar.monomial(1, 1), (0, 1): ExactScalar.monomial(1, 1)})
    for k in range(order // 2 + 1):
        yield _series_check(
            "op-transforms",
            f"O(g_{k}) closed form",
            H.O_transform(H.genfun_g(k, order)),
            (GradedSeries.var(s, "xibar", order) ** k * binomial_power(u, -k - 1)).scale(ExactScalar.monomial(1, k)),
        )
        yield _series_check(
            "op-transforms",
            f"P(h_{k}) closed form",
            H.P_transform(H.genfun_h(k, order)),
            (GradedSeries.var(s, "xibar", order) ** k * binomial_power(u, -k - Fraction(3, 2))).scale(
                ExactScalar.monomial(Fraction(1, 4 ** k), k)
            ),
        )
    rng = random.Random(2024)
    for i in range(samples):
        f = random_series(rng, H.ZY, order)
        k = rng.randrange(1, 4)
        for name, T in (("O", H.O_transform), ("P", H.P_transform)):
            yield _series_check(
                "op-transforms",
                f"{name} intertwines z^{k} d^{k}/dz^{k} (sample {i})",
                T(f.euler_op("z", k)),
                T(f).euler_op("xibar", k),
            )


def t_action_hermitian(order: int = 13, kmax: int = 6) -> Iterable[Check]:
    for k in range(kmax + 1):
        n = min(order, k + 7)
        for p in range(k // 2 + 1):
            e = H.HermitianElement.basis_element(k, p, n)
            yield _elem_check(
                "t-action-hermitian",
                f"t_lambda TD[{k},{p}]: closed form = route via C (deg <= {n})",
                H.t_lambda_act_closed(e),
                H.t_lambda_act_via_C(e),
            )


def random_series(rng: random.Random, alphabet, order: int, terms: int = 5) -> GradedSeries:
    monos = list(alphabet.monomials(order))
    out = {}
    for _ in range(terms):
        m = rng.choice(monos)
        out[m] = ExactScalar.monomial(Fraction(rng.randint(-20, 20), rng.randint(1, 9)), rng.randint(-1, 1))
    return GradedSeries(alphabet, order, out)


SUITES: Dict[str, Callable[..., Iterable[Check]]] = {
    "lk-recursion": lk_recursion,
    "t-power": t_power,
    "t-in-phi": t_in_phi,
    "t-tau-transport": t_tau_transport,
    "immersion": immersion,
    "lk-invariance": lk_invariance,
    "sphere-templates": sphere_templates,
    "hermitian-basis": hermitian_basis,
    "lk-hermitian-routes": lk_hermitian_routes,
    "op-transforms": op_transforms,
    "t-action-hermitian": t_action_hermitian,
}

# suites whose natural order differs from the CLI default
_ORDER_FREE = {"sphere-templates"}


def run(names: List[str] | None = None, order: int | None = None) -> List[Check]:
    names = list(SUITES) if not names else names
    out: List[Check] = []
    for name in names:
        fn = SUITES[name]
        if name in _ORDER_FREE or order is None:
            out.extend(fn())
        else:
            out.extend(fn(order))
    return out
