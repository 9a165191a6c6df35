"""Command-line front end.

Every subcommand is lowered to a query dictionary and answered by
:func:`run_query`, which is also what batch mode calls per input line.
Exit codes: 0 decided, 2 "No" relative to a search bound, 3 error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .. import __version__
from ..algebraic.pipeline import (
    DEFAULT_BUDGET,
    AlgebraicInput,
    SearchExhausted,
    UnsupportedFactorization,
    decide_algebraic_separable,
)
from ..algebraic.tower import ZeroDivisorError
from ..kernel import T, RatFunc, universe_of
from ..ore import DERIVATION, KINDS, SHIFT, OrePoly, format_operator, ore_apply, primitive
from ..reductions import abramov_reduce, hermite_reduce
from ..separability import (
    DegenerateInput,
    brute_force_annihilator,
    gp_form,
    hyperexp_action,
    hyperexp_separable,
    hypergeom_action,
    hypergeom_separable,
    rational_action,
    rational_separable,
    telescoper_exists_dt_sx,
    telescoper_exists_st_dx,
)
from ..valdis import dispersion, local_dispersion
from .parser import ParseError, parse_expression, parse_operator, parse_params
from .records import jsonable

EXIT_DECIDED, EXIT_BOUNDED, EXIT_ERROR = 0, 2, 3

COMMANDS = ("sep-rational", "sep-hyperexp", "sep-hypergeom", "sep-algebraic", "telescoper",
            "reduce", "dispersion", "gp-form", "verify", "oracle")
VARIANTS = {"telescoper": ("st-dx", "dt-sx"), "reduce": ("hermite", "abramov")}
TERMS = ("rational", "hyperexp", "hypergeom")
# query keys echoed into the "input" field, in this order
INPUT_KEYS = ("variant", "expr", "operator", "vars", "kind", "term", "coord", "twist", "at", "var",
              "a_values", "max_order", "max_degree", "budget", "degree_bound")


class QueryError(ValueError):
    """A malformed query (unknown command, missing field, bad option)."""


# --- certificate checking -----------------------------------------------------------------


def apply_twisted(L: OrePoly, f: RatFunc, twist: Optional[RatFunc] = None) -> RatFunc:
    """Coordinate of ``L(f * H)`` where ``H`` has certificate ``twist`` (``H = 1`` when absent)."""
    if twist is None:
        return ore_apply(L, f)
    act = hyperexp_action(twist) if L.kind == DERIVATION else hypergeom_action(twist)
    u = universe_of(f)
    out, cur = u.field.zero, [f]
    for i, c in enumerate(L.coeffs):
        if i:
            cur = act(cur)
        if c:
            out += u.frac(c.numer) / u.frac(c.denom) * cur[0]
    return out


def verify_certificate(expr: str, operator: str, kind: Optional[str] = None,
                       params: Sequence[str] = ("x",), twist: Optional[str] = None) -> bool:
    """Whether the operator text annihilates the expression (times ``H`` for a twist)."""
    f = parse_expression(expr, params)
    L = parse_operator(operator, kind)
    a = parse_expression(twist, params) if twist is not None else None
    return not apply_twisted(L, f, a)


# --- query evaluation -------------------------------------------------------------------------


def _require(q: dict, key: str):
    if q.get(key) in (None, ""):
        raise QueryError(f"missing field {key!r}")
    return q[key]


def _kind(q: dict, default: str = DERIVATION) -> str:
    kind = q.get("kind") or default
    if kind not in KINDS:
        raise QueryError(f"kind must be one of {', '.join(KINDS)}")
    return kind


def _variant(q: dict) -> str:
    v = _require(q, "variant")
    if v not in VARIANTS[q["command"]]:
        raise QueryError(f"{q['command']} variant must be one of {', '.join(VARIANTS[q['command']])}")
    return v


def _a_values(q: dict):
    vals = q.get("a_values")
    if vals is None:
        return None
    if isinstance(vals, str):
        vals = [v for v in vals.split(",") if v.strip()]
    return [Fraction(v) for v in vals]


def _cert(L: Optional[OrePoly]) -> Optional[str]:
    return None if L is None else format_operator(primitive(L))


def _self_check(f: RatFunc, text: Optional[str], kind: str, twist: Optional[RatFunc] = None):
    if text is not None and apply_twisted(parse_operator(text, kind), f, twist):
        raise AssertionError(f"emitted certificate {text!r} does not verify")


def _decide(q: dict, params) -> dict:
    """The command-specific part of a result record."""
    cmd = q["command"]
    expr = _require(q, "expr")
    if cmd == "sep-algebraic":
        P = parse_expression(expr, params, allow_y=True)
        if not P.denom.is_ground:
            raise QueryError("algebraic input must be a polynomial")
        u = universe_of(P)
        Pin = AlgebraicInput.from_poly(u.poly(P))
        bound = q.get("degree_bound")
        v = decide_algebraic_separable(Pin, _a_values(q), int(q.get("budget") or DEFAULT_BUDGET),
                                       None if bound is None else int(bound))
        rep = v.witnesses["report"]
        cert = _cert(v.certificate)
        if cert is not None:
            _self_check(-u.frac(Pin.coeffs[0]) / u.frac(Pin.coeffs[1]), cert, DERIVATION)
        bounded = not v.separable and rep.degree_bound is not None
        return {"separable": v.separable, "certificate": cert, "witnesses": v.witnesses,
                "bound_used": rep.degree_bound, "diagnostics": v.diagnostics, "_bounded": bounded}

    f = parse_expression(expr, params)
    if cmd == "sep-rational":
        kind = _kind(q)
        v = rational_separable(f, kind)
        cert = _cert(v.certificate)
        _self_check(f, cert, kind)
        return {"separable": v.separable, "certificate": cert, "witnesses": v.witnesses,
                "diagnostics": v.diagnostics}
    if cmd in ("sep-hyperexp", "sep-hypergeom"):
        try:
            v = (hyperexp_separable if cmd == "sep-hyperexp" else hypergeom_separable)(f)
        except DegenerateInput as exc:
            gen = "D" if cmd == "sep-hyperexp" else "S - 1"
            raise DegenerateInput(f"{exc}; H is constant in t and {gen} annihilates it") from None
        return {"separable": v.separable, "certificate": None, "witnesses": v.witnesses,
                "diagnostics": v.diagnostics}
    if cmd == "telescoper":
        variant = _variant(q)
        v = (telescoper_exists_st_dx if variant == "st-dx" else telescoper_exists_dt_sx)(f)
        kind = SHIFT if variant == "st-dx" else DERIVATION
        red = v.witnesses["reduction"]
        cert = _cert(v.certificate)
        _self_check(red.remainder, cert, kind)
        wit = {"g": red.g, "remainder": red.remainder, "reduction_var": red.var}
        return {"exists": v.separable, "certificate": cert, "witnesses": wit,
                "diagnostics": v.diagnostics}
    if cmd == "reduce":
        variant = _variant(q)
        var = q.get("var") or T
        red = (hermite_reduce if variant == "hermite" else abramov_reduce)(f, var)
        if red.reconstruct() != f:
            raise AssertionError("reduction does not reconstruct its input")
        return {"witnesses": {"g": red.g, "remainder": red.remainder, "var": var},
                "diagnostics": f"f = {'D' if variant == 'hermite' else 'Delta'}_{var}(g) + remainder"}
    if cmd == "dispersion":
        var = q.get("var") or T
        if not f.denom.is_ground:
            raise QueryError("dispersion takes a polynomial")
        p = universe_of(f).poly(f)
        wit = {"dispersion": dispersion(p, var)}
        at = q.get("at")
        if at:
            wit["local_dispersion"] = local_dispersion(p, universe_of(f).poly(parse_expression(at, params)), var)
            return {"witnesses": wit, "diagnostics": f"dispersion and local dispersion at {at} in {var}"}
        return {"witnesses": wit, "diagnostics": f"dispersion in {var}"}
    if cmd == "gp-form":
        form = gp_form(f)
        return {"witnesses": {"gp_form": form}, "diagnostics": "a = z * S(p)/p * q/rhat"}
    if cmd == "verify":
        op = _require(q, "operator")
        twist = q.get("twist")
        a = parse_expression(twist, params) if twist else None
        ok = not apply_twisted(parse_operator(op, q.get("kind")), f, a)
        return {"verified": ok, "certificate": op,
                "diagnostics": "operator annihilates the input" if ok else "nonzero result"}
    if cmd == "oracle":
        term = q.get("term") or "rational"
        if term not in TERMS:
            raise QueryError(f"term must be one of {', '.join(TERMS)}")
        order, deg = int(q.get("max_order") or 3), int(q.get("max_degree") or 6)
        if term == "rational":
            kind, action, coord, twist = _kind(q), rational_action(_kind(q)), f, None
        else:
            kind = DERIVATION if term == "hyperexp" else SHIFT
            twist = f
            action = (hyperexp_action if term == "hyperexp" else hypergeom_action)(f)
            coord = parse_expression(q.get("coord") or "1", params)
        L = brute_force_annihilator([coord], kind, order, deg, action=action)
        cert = _cert(L)
        _self_check(coord, cert, kind, twist)
        found = L is not None
        diag = ("annihilator found" if found else
                f"no annihilator with order <= {order} and coefficient degree <= {deg}")
        return {"separable": found, "certificate": cert, "witnesses": {},
                "bound_used": {"max_order": order, "max_degree": deg},
                "diagnostics": diag, "_bounded": not found}
    raise QueryError(f"unknown command {cmd!r}")  # pragma: no cover


def _input(q: dict, params) -> dict:
    out = {}
    for k in INPUT_KEYS:
        if k == "vars":
            out[k] = list(params)
        elif q.get(k) not in (None, ""):
            out[k] = q[k]
    return out


def run_query(q: dict) -> tuple[dict, int]:
    """Evaluate one query; returns the result record and the exit code."""
    start = time.perf_counter()
    cmd = q.get("command")
    rec = {"command": cmd}
    code = EXIT_DECIDED
    try:
        if cmd not in COMMANDS:
            raise QueryError(f"unknown command {cmd!r}")
        params = parse_params(q.get("vars"))
        rec["input"] = _input(q, params)
        body = _decide(q, params)
        bounded = body.pop("_bounded", False)
        rec.update(body)
        if bounded:
            code = EXIT_BOUNDED
    except (ParseError, QueryError, DegenerateInput, SearchExhausted, UnsupportedFactorization,
            ZeroDivisorError, ValueError, ZeroDivisionError) as exc:
        rec.setdefault("input", {k: v for k, v in q.items() if k != "command"})
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err.update(line=exc.line, col=exc.col)
        rec = {"command": cmd, "input": rec["input"], "diagnostics": str(exc), "error": err}
        code = EXIT_ERROR
    out = {"command": cmd, "input": rec.get("input", {})}
    for key in ("separable", "exists", "verified"):
        if key in rec:
            out[key] = rec[key]
    out["certificate"] = rec.get("certificate")
    out["witnesses"] = jsonable(rec.get("witnesses", {}))
    out["bound_used"] = jsonable(rec.get("bound_used"))
    out["diagnostics"] = rec.get("diagnostics", "")
    out["version"] = __version__
    if "error" in rec:
        out["error"] = rec["error"]
    if q.get("timing"):
        out["timing"] = round(time.perf_counter() - start, 6)
    return out, code


def _run_line(line: str) -> tuple[dict, int]:
    try:
        q = json.loads(line)
        if not isinstance(q, dict):
            raise ValueError("query must be a JSON object")
    except ValueError as exc:
        return ({"command": None, "input": {"line": line}, "certificate": None, "witnesses": {},
                 "bound_used": None, "diagnostics": str(exc), "version": __version__,
                 "error": {"type": "QueryError", "message": str(exc)}}, EXIT_ERROR)
    return run_query(q)


def run_batch(lines: Sequence[str], jobs: int = 1) -> list[tuple[dict, int]]:
    """Answer JSON query lines, preserving their order."""
    lines = [ln for ln in lines if ln.strip()]
    if jobs > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_line, lines))
    return [_run_line(ln) for ln in lines]


# --- argument parsing ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, expr: bool = True):
    if expr:
        p.add_argument("expr", help="expression in t and the declared parameters")
    p.add_argument("--vars", default="x", help="comma-separated parameter names (default: x)")
    p.add_argument("--json", action="store_true", help="print the JSON result record")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the record")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ctsep", description="Separability and telescoper deciders.")
    ap.add_argument("--version", action="version", version=f"ctsep {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sep-rational", help="separability of a rational function")
    _common(p)
    p.add_argument("--kind", choices=KINDS, default=DERIVATION)
    for name, what in (("sep-hyperexp", "hyperexponential function from a = D(H)/H"),
                       ("sep-hypergeom", "hypergeometric term from a = S(H)/H"),
                       ("gp-form", "Gosper-Petkovsek form of a rational function")):
        _common(sub.add_parser(name, help=what))
    p = sub.add_parser("sep-algebraic", help="separability of a root of a polynomial in Y")
    _common(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="candidate points tried in each deterministic search")
    p.add_argument("--degree-bound", type=int, default=None,
                   help="override the degree bound for polynomial solutions")
    p.add_argument("--a-values", default=None, help="comma-separated values of t to try first")
    p = sub.add_parser("telescoper", help="telescoper existence for a bivariate rational function")
    p.add_argument("variant", choices=VARIANTS["telescoper"])
    _common(p)
    p = sub.add_parser("reduce", help="Hermite or Abramov reduction")
    p.add_argument("variant", choices=VARIANTS["reduce"])
    _common(p)
    p.add_argument("--var", default=T, help="variable to work in (default: t)")
    p = sub.add_parser("dispersion", help="dispersion or local dispersion of a polynomial")
    _common(p)
    p.add_argument("--at", default=None, help="irreducible polynomial for the local dispersion")
    p.add_argument("--var", default=T, help="variable to work in (default: t)")
    p = sub.add_parser("verify", help="check that an operator annihilates an expression")
    _common(p)
    p.add_argument("operator", help="operator in t and D (or S)")
    p.add_argument("--kind", choices=KINDS, default=None)
    p.add_argument("--twist", default=None, help="certificate a of a factor H multiplying expr")
    p = sub.add_parser("oracle", help="brute-force annihilator search")
    _common(p)
    p.add_argument("--term", choices=TERMS, default="rational")
    p.add_argument("--kind", choices=KINDS, default=DERIVATION)
    p.add_argument("--coord", default=None, help="coordinate multiplying H (default 1)")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=6)
    p = sub.add_parser("batch", help="answer one JSON query per input line")
    p.add_argument("file", nargs="?", default="-", help="query file (default: stdin)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return ap


def _human(rec: dict) -> str:
    lines = []
    for key, label in (("separable", "separable"), ("exists", "telescoper exists"),
                       ("verified", "verified")):
        if key in rec:
            lines.append(f"{label}: {'yes' if rec[key] else 'no'}")
    if rec.get("certificate") is not None:
        lines.append(f"certificate: {rec['certificate']}")
    for k, v in rec["witnesses"].items():
        if k != "report":
            lines.append(f"{k}: {json.dumps(v)}")
    if rec.get("bound_used") is not None:
        lines.append(f"bound used: {json.dumps(rec['bound_used'])}")
    if "error" in rec:
        lines.append(f"error: {rec['error']['message']}")
    elif rec["diagnostics"]:
        lines.append(f"note: {rec['diagnostics']}")
    return "\n".join(lines)


def dump(rec: dict) -> str:
    return json.dumps(rec, indent=2, ensure_ascii=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        stream = sys.stdin if args.file == "-" else open(args.file, encoding="utf-8")
        with stream:
            results = run_batch(stream.read().splitlines(), args.jobs)
        for rec, _ in results:
            sys.stdout.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return max((c for _, c in results), default=EXIT_DECIDED)
    q = {k: v for k, v in vars(args).items() if k not in ("json",)}
    if "a_values" in q and q["a_values"] is None:
        del q["a_values"]
    rec, code = run_query(q)
    sys.stdout.write(dump(rec) if args.json else _human(rec) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
