"""Command-line interface.

Exit codes: 0 success, 2 usage or input error, 3 mathematical-domain error
(e.g. a basis conversion at lambda = 0), 1 failed verification.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction

from . import hermitian as H
from . import immersion as I
from . import render
from . import riemannian as R
from . import sphere as S
from . import verify as V
from .scalars import LAMBDA, PI, DomainError, ExactScalar, factorial, omega

EXIT_USAGE = 2
EXIT_DOMAIN = 3
DEFAULT_ORDER = 12


class UsageError(ValueError):
    pass


def default_order() -> int:
    raw = os.environ.get("RIEMCURV_ORDER")
    if not raw:
        return DEFAULT_ORDER
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RIEMCURV_ORDER must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("RIEMCURV_ORDER must be >= 1")
    return n


def parse_lambda(text: str) -> ExactScalar:
    if text == "symbolic":
        return LAMBDA
    try:
        return ExactScalar.coerce(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--lambda must be 'symbolic' or a rational p/q, got {text!r}") from None


def lambda_label(lam: ExactScalar) -> str:
    return "symbolic" if lam == LAMBDA else str(lam)


_TERM = re.compile(r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\*)?(?P<basis>C|G|TD|D):(?P<idx>\d+(?:,\d+){1,2})$")


def parse_element(spec: str, order: int):
    """Parse ``[coeff*]BASIS:k,p[,l]`` terms joined by ``+``."""
    terms = [t.strip() for t in spec.replace(" ", "").split("+") if t.strip()]
    if not terms:
        raise UsageError("empty element spec")
    parsed = []
    for t in terms:
        m = _TERM.match(t)
        if m is None:
            raise UsageError(f"bad element term {t!r}; expected [coeff*]BASIS:k,p[,l]")
        idx = tuple(int(i) for i in m["idx"].split(","))
        coeff = Fraction(m["coeff"]) if m["coeff"] else Fraction(1)
        parsed.append((m["basis"], idx, coeff))
    kinds = {(b if b != "C" else f"C{len(i)}") for b, i, _ in parsed}
    if len(kinds) != 1:
        raise UsageError(f"element spec mixes bases: {sorted(kinds)}")
    kind = kinds.pop()
    coeffs = {}
    for _, idx, c in parsed:
        coeffs[idx] = coeffs.get(idx, 0) + c
    try:
        if kind == "C2":
            return R.RElement.from_coeffs(coeffs, order)
        if kind in ("C3", "G"):
            if any(len(i) != 3 for i in coeffs):
                raise UsageError("relative elements need three indices k,p,l")
            return I.RelElement.from_coeffs(coeffs, order, "C" if kind == "C3" else "G")
        if any(len(i) != 2 for i in coeffs):
            raise UsageError(f"{kind} elements need two indices k,q")
        if any(i[0] > order for i in coeffs):
            raise UsageError(f"element degree exceeds --order {order}")
        return H.HermitianElement(coeffs, order, kind)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, element, **meta):
    sys.stdout.write(render.render(element, args.format, **meta))


# -- commands ---------------------------------------------------------------

def cmd_expand(args) -> int:
    n, lam = args.order, args.lam
    if args.kind in ("lk", "lk-normalized"):
        if args.k is None or args.k < 0:
            raise UsageError("expand lk needs --k >= 0")
        scale = PI ** args.k / (omega(args.k) * factorial(args.k)) if args.kind == "lk-normalized" else 1
        if args.basis in ("tilde-delta", "delta"):
            e = H.lk_in_tilde_delta(args.k, lam, n) * scale
        else:
            e = R.lk_bar(args.k, n) * scale
    else:
        if args.k is None or args.p is None:
            raise UsageError("expand basis needs --k and --p")
        try:
            e = R.basis_element(args.k, args.p, max(n, args.k))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.basis in ("tilde-delta", "delta"):
            e = H.tilde_from_C(e, lam)
    if args.basis == "delta":
        e = H.tilde_to_delta(e)
    elif args.basis == "tau":
        e = S.globalize_on_sphere(e, lam=lam)
    meta = {"lambda": lambda_label(lam)} if args.basis != "C" else {}
    _emit(args, e, **meta)
    return 0


def cmd_act(args) -> int:
    e = parse_element(args.on, args.order)
    if args.action in ("t", "t-power"):
        if not isinstance(e, R.RElement):
            raise UsageError(f"act {args.action} needs a C:k,p element")
        if args.action == "t":
            out = R.t_act(e)
        else:
            if args.power is None or args.power < 0:
                raise UsageError("act t-power needs a power i >= 0")
            out = R.t_power_act(args.power, e)
        _emit(args, out)
        return 0
    if not isinstance(e, H.HermitianElement):
        raise UsageError("act t-lambda needs a TD:k,q or D:k,q element")
    if args.lam.is_zero():
        raise DomainError("t-lambda is computed in the Delta~ basis, which needs lambda != 0")
    if e.basis == "D":
        e = H.delta_to_tilde(e)
    out = H.t_lambda_act_closed(e, args.lam)
    _emit(args, out, **{"lambda": lambda_label(args.lam)})
    return 0


def cmd_convert(args) -> int:
    e = parse_element(args.on, args.order)
    lam, to = args.lam, args.to
    if isinstance(e, R.RElement):
        if to == "C":
            out = e
        elif to == "tau":
            out = S.globalize_on_sphere(e, lam=lam)
        elif to in ("TD", "D"):
            out = H.tilde_from_C(e, lam)
            if to == "D":
                out = H.tilde_to_delta(out)
        else:
            raise UsageError(f"cannot convert a C element to {to}")
    elif isinstance(e, I.RelElement):
        if to == e.basis:
            out = e
        elif to == "G":
            out = I.c_to_gamma(e)
        elif to == "C":
            out = I.gamma_to_c(e)
        else:
            raise UsageError(f"cannot convert a relative element to {to}")
    else:
        if e.basis == "D":
            e = H.delta_to_tilde(e)
        if to == "TD":
            out = e
        elif to == "D":
            out = H.tilde_to_delta(e)
        elif to == "C":
            out = H.C_from_tilde(e, lam)
        else:
            raise UsageError(f"cannot convert a hermitian element to {to}")
    _emit(args, out, **{"lambda": lambda_label(lam)})
    return 0


def cmd_verify(args) -> int:
    names = []
    for s in args.suite or []:
        names.extend(x for x in s.split(",") if x)
    unknown = [x for x in names if x not in V.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {sorted(V.SUITES)}")
    order = args.order if args.order_given else None
    checks = V.run(names or None, order)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        sys.stdout.write(
            render.dumps(
                {
                    "passed": ok,
                    "checks": [
                        {"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail if not c.passed else ""}
                        for c in checks
                    ],
                }
            )
        )
    else:
        for c in checks:
            print(c.line())
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return 0 if ok else 1


def cmd_oracle_mu(args) -> int:
    try:
        radius = Fraction(args.R)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--R must be a positive rational, got {args.R!r}") from None
    if args.n < 0 or radius <= 0:
        raise UsageError("oracle-mu needs --n >= 0 and --R > 0")
    vols = S.sphere_intrinsic_volumes(args.n, radius)
    if args.format == "json":
        sys.stdout.write(render.dumps({"n": args.n, "R": str(radius), "mu": {str(j): str(vols[j]) for j in range(args.n + 1)}}))
    elif args.format == "csv":
        print("j,coeff_rational,pi_exp,lambda_half_exp")
        for j in range(args.n + 1):
            for q, p, l in render.scalar_rows(vols[j]):
                print(f"{j},{q},{p},{l}")
    else:
        for j in range(args.n + 1):
            print(f"mu_{j} = {vols[j]}")
    return 0


def cmd_table(args) -> int:
    if args.which == "sphere":
        tables = S.conversion_tables(args.order, args.lam)
    else:
        if args.k is None:
            raise UsageError("table hermitian needs --k")
        tables = {
            "C_in_tilde_delta": H.c_in_tilde_matrix(args.k, args.lam),
            "tilde_delta_in_C": H.tilde_in_c_matrix(args.k, args.lam),
        }
    if args.format == "csv":
        sys.stdout.write(render.matrices_to_csv(tables))
    else:
        sys.stdout.write(render.dumps({name: render.matrix_to_json(m) for name, m in tables.items()}))
    return 0


# -- argument parsing ---------------------------------------------------------

class _OrderAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.order_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, action=_OrderAction, help="truncation degree N")
    common.add_argument("--lambda", dest="lambda_text", default="symbolic", help="'symbolic' or a rational p/q")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p = argparse.ArgumentParser(prog="riemcurv", description="Exact calculus of Riemannian curvature measures.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="expand an element")
    e.add_argument("kind", choices=("lk", "lk-normalized", "basis"))
    e.add_argument("--k", type=int)
    e.add_argument("--p", type=int)
    e.add_argument("--basis", choices=("C", "tau", "tilde-delta", "delta"), default="C")
    e.set_defaults(func=cmd_expand)

    a = sub.add_parser("act", parents=[common], help="apply t, t^i or t_lambda")
    a.add_argument("action", choices=("t", "t-power", "t-lambda"))
    a.add_argument("power", type=int, nargs="?")
    a.add_argument("--on", required=True, help="element spec, e.g. C:0,0 or 2*TD:3,1+TD:3,0")
    a.set_defaults(func=cmd_act)

    c = sub.add_parser("convert", parents=[common], help="change basis")
    c.add_argument("--on", required=True)
    c.add_argument("--to", required=True, choices=("C", "G", "TD", "D", "tau"))
    c.set_defaults(func=cmd_convert)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", action="append", help=f"one of {', '.join(V.SUITES)} (repeatable)")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle-mu", parents=[common], help="intrinsic volumes of a round sphere")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--R", default="1")
    o.set_defaults(func=cmd_oracle_mu)

    t = sub.add_parser("table", parents=[common], help="conversion matrices")
    t.add_argument("which", choices=("sphere", "hermitian"))
    t.add_argument("--k", type=int)
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if not getattr(args, "order_given", False):
            args.order = default_order()
            args.order_given = "RIEMCURV_ORDER" in os.environ
        if args.order < 1:
            raise UsageError("--order must be >= 1")
        args.lam = parse_lambda(args.lambda_text)
        return args.func(args)
    except DomainError as exc:
        print(f"riemcurv: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError) as exc:
        print(f"riemcurv: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
