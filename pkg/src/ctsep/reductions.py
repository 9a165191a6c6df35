"""Hermite (differential) and Abramov (shift) reduction of rational functions."""
from __future__ import annotations

from dataclasses import dataclass

from .kernel import MPoly, RatFunc, diff, shift, universe_of, view_of
from .valdis import dispersion


@dataclass(frozen=True)
class ReductionResult:
    """``f = D(g) + rem`` (differential) or ``f = Delta(g) + rem`` (shift)."""

    g: RatFunc
    rem_num: MPoly
    rem_den: MPoly
    kind: str
    var: str

    @property
    def remainder(self) -> RatFunc:
        field = self.g.field
        return field(self.rem_num) / field(self.rem_den)

    def reconstruct(self) -> RatFunc:
        if self.kind == "differential":
            return diff(self.g, self.var) + self.remainder
        return shift(self.g, self.var, 1) - self.g + self.remainder


def _solve_bezout(a, b, c):
    """``(s, t)`` with ``s*a + t*b == c`` and ``deg s < deg b``; ``a, b`` coprime."""
    s0, _, h = a.gcdex(b)
    s0 = s0.quo_ground(h.LC)
    s = (s0 * c).rem(b)
    t = (c - s * a).exquo(b)
    return s, t


def _integrate_poly(p, x):
    out = p.ring.zero
    for (k,), c in p.terms():
        out += x ** (k + 1) * (c / (k + 1))
    return out


def _antidifference_poly(p, x):
    """Polynomial ``G`` with ``G(x+1) - G(x) == p``."""
    out = p.ring.zero
    rest = p
    while rest:
        m = rest.degree()
        term = x ** (m + 1) * (rest.LC / (m + 1))
        out += term
        rest -= term.compose(x, x + 1) - term
    return out


def hermite_parts(f: RatFunc, var: str = "t"):
    """Split ``f`` as ``D(g) + polypart + simple``.

    ``g`` is proper, ``polypart`` is polynomial in ``var`` and ``simple`` is
    proper with squarefree denominator.  Uses the quadratic Hermite scheme
    with one extended-Euclid solve per squarefree level.
    """
    f = universe_of(f).frac(f)
    view = view_of(f, var)
    num, den = view.frac_to_uni(f)
    poly, a = num.div(den)
    dm = view.gcd(den, den.diff(view.x))
    ds = den.exquo(dm)
    g = f.field.zero
    while dm.degree() > 0:
        dm2 = view.gcd(dm, dm.diff(view.x))
        dms = dm.exquo(dm2)
        b, c = _solve_bezout(-(ds * dm.diff(view.x)).exquo(dm), dms, a)
        a = c - (b.diff(view.x) * ds).exquo(dms)
        g += view.ratio_from_uni(b, dm)
        dm = dm2
    h = view.gcd(a, ds)
    simple = view.ratio_from_uni(a.exquo(h), ds.exquo(h))
    return g, view.from_uni(poly), simple


def hermite_reduce(f: RatFunc, var: str = "t") -> ReductionResult:
    """Ostrogradsky-Hermite reduction of ``f`` with respect to ``var``.

    The remainder is zero exactly when ``f`` is a derivative of a rational
    function.
    """
    f = universe_of(f).frac(f)
    view = view_of(f, var)
    g, poly, simple = hermite_parts(f, var)
    pu, _ = view.frac_to_uni(poly)
    g = g + view.from_uni(_integrate_poly(pu, view.x))
    return ReductionResult(g, simple.numer, simple.denom, "differential", var)


def abramov_reduce(f: RatFunc, var: str = "t") -> ReductionResult:
    """Abramov reduction of ``f`` with respect to ``var``.

    Components whose denominators sit at the top of a shift orbit are moved
    one step down by ``w = Delta(w(var-1)) + w(var-1)`` until the remaining
    denominator is shift-free.
    """
    f = universe_of(f).frac(f)
    view = view_of(f, var)
    x = view.x
    num, den = view.frac_to_uni(f)
    poly, a = num.div(den)
    g = view.from_uni(_antidifference_poly(poly, x))
    while den.degree() > 0:
        d = dispersion(view.from_uni(den).numer, var)
        if d == 0:
            break
        h = view.gcd(den, den.compose(x, x + d))
        top, rest = den.ring.one, den
        while True:
            c = view.gcd(rest, h)
            if c.degree() <= 0:
                break
            top *= c
            rest = rest.exquo(c)
        s, _ = _solve_bezout(rest, top, den.ring.one)
        a_top = (a * s).rem(top)
        a_rest = (a - a_top * rest).exquo(top)
        down_num = a_top.compose(x, x - 1)
        down_den = top.compose(x, x - 1)
        g += view.ratio_from_uni(down_num, down_den)
        a = down_num * rest + a_rest * down_den
        den = down_den * rest
        c = view.gcd(a, den)
        a, den = a.exquo(c), den.exquo(c)
        lc = den.LC
        a, den = a.quo_ground(lc), den.monic()
    rem = view.ratio_from_uni(a, den)
    return ReductionResult(g, rem.numer, rem.denom, "shift", var)
