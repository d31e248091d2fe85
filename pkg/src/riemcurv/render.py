"""Canonical JSON / CSV / text renderings of elements.

Term order is the graded order of each element type and scalars use the
canonical ``str`` form, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, List, Tuple

from .hermitian import HermitianElement
from .immersion import RelElement
from .riemannian import RElement
from .scalars import ExactScalar
from .sphere import SphereElement

CSV_COLUMNS = ("basis", "k", "p", "coeff_rational", "pi_exp", "lambda_half_exp")


def element_rows(e) -> Tuple[str, List[dict]]:
    """(basis label, list of index/coeff dicts) for any element type."""
    if isinstance(e, RElement):
        return "C", [{"k": k, "p": p, "coeff": c} for k, p, c in e.items()]
    if isinstance(e, RelElement):
        return e.basis, [{"k": k, "p": p, "l": l, "coeff": c} for k, p, l, c in e.items()]
    if isinstance(e, HermitianElement):
        return e.basis, [{"k": k, "p": q, "coeff": c} for k, q, c in e.items()]
    if isinstance(e, SphereElement):
        return "tau", [{"k": k, "coeff": c} for k, c in e.items()]
    raise TypeError(f"cannot render {type(e).__name__}")


def to_json_obj(e, **meta) -> dict:
    basis, rows = element_rows(e)
    obj = {"basis": basis, "order": e.order}
    obj.update(meta)
    obj["terms"] = [{**{k: v for k, v in r.items() if k != "coeff"}, "coeff": str(r["coeff"])} for r in rows]
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def scalar_rows(c: ExactScalar) -> Iterable[Tuple[str, int, int]]:
    if c.is_zero():
        yield "0", 0, 0
    for (p, l), q in c.items():
        yield str(q), p, l


def to_csv(e) -> str:
    basis, rows = element_rows(e)
    extra = ["l"] if isinstance(e, RelElement) else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(CSV_COLUMNS) + extra)
    for r in rows:
        for q, p_exp, l_exp in scalar_rows(r["coeff"]):
            row = [basis, r["k"], r.get("p", ""), q, p_exp, l_exp]
            if extra:
                row.append(r["l"])
            w.writerow(row)
    return buf.getvalue()


def to_text(e) -> str:
    basis, rows = element_rows(e)
    if not rows:
        return "0\n"
    lines = []
    for r in rows:
        idx = ",".join(str(r[k]) for k in ("k", "p", "l") if k in r)
        lines.append(f"{basis}[{idx}]\t{r['coeff']}")
    return "\n".join(lines) + "\n"


def render(e, fmt: str, **meta) -> str:
    if fmt == "json":
        return dumps(to_json_obj(e, **meta))
    if fmt == "csv":
        return to_csv(e)
    return to_text(e)


def matrix_to_json(m) -> list:
    return [[str(c) for c in row] for row in m]


def matrices_to_csv(tables: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "row", "col", "coeff_rational", "pi_exp", "lambda_half_exp"])
    for name, m in tables.items():
        for i, row in enumerate(m):
            for j, c in enumerate(row):
                for q, p_exp, l_exp in scalar_rows(c):
                    w.writerow([name, i, j, q, p_exp, l_exp])
    return buf.getvalue()
