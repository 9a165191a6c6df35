"""Orders at irreducible polynomials, Abramov dispersion and local dispersion."""
from __future__ import annotations

import math

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from .kernel import (
    MPoly,
    RatFunc,
    coeffs,
    content_pp,
    degree,
    mp_gcd,
    shift,
    subs,
    universe_of,
    variables,
    view_of,
)

INF = math.inf


def _multiplicity(a, p) -> int:
    m = 0
    while True:
        q, r = a.div(p)
        if r:
            return m
        a = q
        m += 1


def order_at(f: RatFunc, p: MPoly, var: str = "t"):
    """Order of ``f`` at the irreducible polynomial ``p`` (``INF`` for zero).

    ``p`` is treated as a polynomial in ``var`` over the field of the other
    variables; its irreducibility is the caller's responsibility.
    """
    u = universe_of(p)
    p = u.poly(p)
    if degree(p, var) <= 0:
        raise ValueError(f"order at a polynomial constant in {var}")
    f = u.frac(f)
    if not f:
        return INF
    view = view_of(f, var)
    num, den = view.frac_to_uni(f)
    pu = view.to_uni(p).monic()
    return _multiplicity(num, pu) - _multiplicity(den, pu)


def _gen_index(f, var: str) -> int:
    return [str(s) for s in f.ring.symbols].index(var)


def integer_roots(c: MPoly, var: str) -> list[int]:
    """Integer roots of a polynomial in ``var`` alone (in any sympy ring)."""
    if not c:
        raise ValueError("integer roots of zero")
    roots = []
    _, factors = c.factor_list()
    for f, _ in factors:
        if f.degree(_gen_index(f, var)) != 1:
            continue
        cs = {k: v for k, v in zip(*_split(f, var))}
        a1, a0 = cs.get(1), cs.get(0, 0)
        root = -a0 / a1
        if root.denominator == 1:
            roots.append(int(root.numerator))
    return sorted(set(roots))


def _split(f: MPoly, var: str):
    i = _gen_index(f, var)
    ks, cs = [], []
    for monom, c in f.terms():
        ks.append(monom[i])
        cs.append(c)
    return ks, cs


def _generic_point(polys, var: str) -> dict:
    """Integer values for the other variables keeping every leading coefficient in ``var`` nonzero."""
    u = universe_of(polys[0])
    names = sorted(set().union(*(variables(p) for p in polys)) - {var}, key=u.index)
    lcs = [coeffs(p, var)[degree(p, var)] for p in polys]
    for attempt in range(1, 100):
        pt = {s: attempt * (2 * i + 3) + i for i, s in enumerate(names)}
        if all(subs(c, pt) for c in lcs):
            return pt
    raise RuntimeError("no generic point found")  # pragma: no cover


_TK = ring("t,k", QQ, lex)[0]
_K = ring("k", QQ, lex)[0]


def _shift_resultant(a: MPoly, b: MPoly, var: str):
    """``Res_var(a(var), b(var + k))`` in ``Q[k]`` for ``a, b`` univariate in ``var``."""
    t, k = _TK.gens
    A = sum((c.LC * t**e for e, c in coeffs(a, var).items()), _TK.zero)
    B = sum((c.LC * t**e for e, c in coeffs(b, var).items()), _TK.zero)
    r = A.resultant(B.compose(t, t + k))
    return _K.from_dict({(m[-1],): c for m, c in r.terms()})


def integer_shifts(a: MPoly, b: MPoly, var: str = "t", nonnegative: bool = True) -> list[int]:
    """Integers ``k`` such that ``gcd(a, b(var + k))`` is nonconstant in ``var``.

    Candidates are the integer roots of ``Res_var(a(var), b(var + k))`` after
    the other variables are specialized to a point where the leading
    coefficients survive (a common factor survives such a specialization);
    each candidate is confirmed by an actual gcd.
    """
    u = universe_of(a)
    if degree(a, var) <= 0 or degree(b, var) <= 0:
        return []
    others = [s for s in u.symbols if s != var]
    a = content_pp(a, others)[1]
    b = content_pp(b, others)[1]
    pt = _generic_point([a, b], var)
    res = _shift_resultant(subs(a, pt), subs(b, pt), var)
    out = []
    for r in integer_roots(res, "k"):
        if nonnegative and r < 0:
            continue
        if degree(mp_gcd(a, shift(b, var, r)), var) > 0:
            out.append(r)
    return out


def dispersion(p: MPoly, var: str = "t"):
    """Abramov dispersion: the largest ``k >= 0`` with ``gcd(p, p(var + k)) != 1``."""
    if not p:
        return INF
    if degree(p, var) <= 0:
        return 0
    return max(integer_shifts(p, p, var), default=0)


def local_dispersion(p: MPoly, q: MPoly, var: str = "t"):
    """Largest distance between shifts of the irreducible ``q`` dividing ``p``."""
    u = universe_of(q)
    q = u.poly(q)
    if degree(q, var) <= 0:
        raise ValueError(f"local dispersion at a polynomial constant in {var}")
    p = u.poly(p)
    if not p:
        return INF
    shifts = integer_shifts(p, q, var, nonnegative=False)
    if not shifts:
        return 0
    return max(shifts) - min(shifts)
