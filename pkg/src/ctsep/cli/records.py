"""Conversion of library results into JSON-ready values."""
from __future__ import annotations

import json
import math
from dataclasses import fields, is_dataclass
from importlib import resources

from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from ..algebraic.pipeline import AlgebraicReport, SimplePoint
from ..algebraic.tower import FieldTower, KElem
from ..kernel import RESIDUE_VAR
from ..ore import OrePoly, _is_sum, format_operator
from ..separability import DiffSplitForm
from .parser import format_ratfunc


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(e) for e in k)
    return str(k)


def poly_str(cs, var: str = "Y") -> str:
    """Coefficient list (lowest degree first) printed as a polynomial in ``var``."""
    out = ""
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if not c:
            continue
        s = (str(c) if isinstance(c, KElem) else format_ratfunc(c)).replace(" ", "")
        neg = s.startswith("-") and not _is_sum(s)
        if neg:
            s = s[1:]
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if _is_sum(s) and (mono or out):
            s = f"({s})"
        body = s if not mono else mono if s == "1" else f"{s}*{mono}"
        out += (" - " if neg else " + ") + body if out else ("-" if neg else "") + body
    return out or "0"


def report_dict(rep: AlgebraicReport) -> dict:
    return {
        "leading_split": rep.leading_split,
        "scale": jsonable(rep.scale),
        "simple_point": jsonable(rep.simple_point),
        "factor": poly_str(rep.factor) if rep.factor else None,
        "ell": rep.ell,
        "basis_discriminant": jsonable(rep.D),
        "spec_point": None if rep.spec_point is None else
        {"params": jsonable(rep.spec_point[0]), "z": jsonable(rep.spec_point[1])},
        "qbeta": poly_str(rep.qbeta) if rep.qbeta else None,
        "q": jsonable(rep.q),
        "A": jsonable(rep.A),
        "B": jsonable(rep.B),
        "solution_dimension": len(rep.basis),
        "solutions": jsonable(rep.basis),
        "degree_bound": rep.degree_bound,
        "det_form": jsonable(rep.C),
        "det_t_degree": rep.c_t_degree,
        "witness_z": jsonable(rep.witness_z),
    }


def jsonable(obj):
    """Recursively convert library values into JSON data with text leaves."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return ("inf" if obj > 0 else "-inf") if math.isinf(obj) else obj
    if isinstance(obj, OrePoly):
        return format_operator(obj)
    if isinstance(obj, KElem):
        return str(obj)
    if isinstance(obj, FieldTower):
        return obj.minpoly_str()
    if isinstance(obj, SimplePoint):
        return obj.describe()
    if isinstance(obj, AlgebraicReport):
        return report_dict(obj)
    if isinstance(obj, (PolyElement, FracElement)):
        return format_ratfunc(obj)
    if isinstance(obj, DiffSplitForm):
        out = {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
        out["residue_resultant"] = out["residue_resultant"].replace(RESIDUE_VAR, "z")
        return out
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def load_schema() -> dict:
    return json.loads(resources.files("ctsep.cli").joinpath("schema.json").read_text())
