"""Exact polynomial and rational-function arithmetic over the rationals.

Polynomials are sympy ``PolyElement`` objects and rational functions are
``FracElement`` objects, both living in the ring/field owned by a
:class:`VarUniverse`.  A universe fixes the distinguished variable ``t``,
the parameters ``x1..xm`` and a handful of auxiliary generators used
internally (``Y`` for algebraic inputs, ``_k`` for symbolic shifts, ``_r``
for residues and one underscored duplicate per parameter).

Everything here is immutable and side-effect free.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.rings import PolyElement, PolyRing

T = "t"
Y = "Y"
SHIFT_VAR = "_k"
RESIDUE_VAR = "_r"
RESERVED = frozenset({"t", "Y", "D", "S"})
ORDER = "grlex"

_IDENT = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")

MPoly = PolyElement
RatFunc = FracElement
Elem = Union[PolyElement, FracElement]


class VarUniverse:
    """The set of variables a computation lives in.

    Use :func:`get_universe` rather than constructing directly, so that equal
    parameter tuples share one ring.
    """

    def __init__(self, params: Sequence[str]):
        params = tuple(params)
        for p in params:
            if not _IDENT.match(p) or p in RESERVED:
                raise ValueError(f"invalid parameter name {p!r}")
        if len(set(params)) != len(params):
            raise ValueError("parameter names must be distinct")
        self.params = params
        self.dup = {p: "_" + p for p in params}
        self.symbols = (T, *params, Y, SHIFT_VAR, RESIDUE_VAR, *self.dup.values())
        self.field = FracField(self.symbols, QQ, ORDER)
        self.ring = self.field.ring
        self._index = {s: i for i, s in enumerate(self.symbols)}

    def __repr__(self):
        return f"VarUniverse(params={self.params!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def gen(self, name: str) -> MPoly:
        return self.ring.gens[self.index(name)]

    def fgen(self, name: str) -> RatFunc:
        return self.field.gens[self.index(name)]

    @property
    def t(self) -> RatFunc:
        return self.fgen(T)

    def frac(self, value) -> RatFunc:
        """Coerce an int, Fraction, polynomial or rational function into the field."""
        if isinstance(value, FracElement):
            if value.field is self.field:
                return value
            return value.set_field(self.field)
        if isinstance(value, PolyElement):
            if value.ring is not self.ring:
                value = value.set_ring(self.ring)
            return self.field(value)
        return self.field(self.ring.ground_new(qq(value)))

    def poly(self, value) -> MPoly:
        if isinstance(value, PolyElement):
            return value if value.ring is self.ring else value.set_ring(self.ring)
        if isinstance(value, FracElement):
            f = self.frac(value)
            if not f.denom.is_ground:
                raise ValueError("not a polynomial")
            return f.numer.quo_ground(f.denom.LC)
        return self.ring.ground_new(qq(value))


def qq(value):
    """Coerce an int, ``Fraction`` or sympy rational into the ground field."""
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, int):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.convert(value)


_BY_RING: dict = {}


@lru_cache(maxsize=None)
def get_universe(params: tuple[str, ...] = ("x",)) -> VarUniverse:
    u = VarUniverse(params)
    _BY_RING[u.ring] = u
    return u


def universe_of(obj: Elem) -> VarUniverse:
    ring = obj.ring if isinstance(obj, PolyElement) else obj.field.ring
    try:
        return _BY_RING[ring]
    except KeyError:
        raise ValueError("element does not belong to a registered universe") from None


def numer_denom(f: Elem) -> tuple[MPoly, MPoly]:
    if isinstance(f, PolyElement):
        return f, f.ring.one
    return f.numer, f.denom


def degree(p: Elem, var: str) -> int:
    """Degree in ``var``; -1 for the zero polynomial."""
    if isinstance(p, FracElement):
        if not p.denom.is_ground:
            raise ValueError("degree of a non-polynomial rational function")
        p = p.numer
    if not p:
        return -1
    return p.degree(universe_of(p).index(var))


def coeffs(p: MPoly, var: str) -> dict[int, MPoly]:
    """Coefficients of ``p`` viewed as a polynomial in ``var``."""
    i = universe_of(p).index(var)
    parts: dict[int, dict] = defaultdict(dict)
    for monom, c in p.terms():
        parts[monom[i]][monom[:i] + (0,) + monom[i + 1:]] = c
    return {k: p.ring.from_dict(d) for k, d in parts.items()}


def variables(f: Elem) -> set[str]:
    """Names of the generators that actually occur in ``f``."""
    out = set()
    for p in numer_denom(f):
        syms = p.ring.symbols
        for monom in p.monoms():
            out.update(str(syms[i]) for i, e in enumerate(monom) if e)
    return out


def is_free_of(f: Elem, names: Iterable[str]) -> bool:
    return not (variables(f) & set(names))


def shift(f: Elem, var: str, k=1) -> Elem:
    """Substitute ``var -> var + k``; ``k`` may be an integer or a polynomial."""
    u = universe_of(f)
    g = u.gen(var)
    if isinstance(f, PolyElement):
        if k == 0 or not f:
            return f
        return f.compose(g, g + k)
    n = f.numer.compose(g, g + k)
    d = f.denom.compose(g, g + k)
    return u.field(n) / u.field(d)


def diff(f: Elem, var: str) -> Elem:
    u = universe_of(f)
    return f.diff(u.gen(var) if isinstance(f, PolyElement) else u.fgen(var))


def subs(f: Elem, mapping: dict) -> Elem:
    """Substitute rational values for variables; raises ZeroDivisionError on a pole."""
    u = universe_of(f)
    pairs = [(u.index(k), qq(v)) for k, v in mapping.items()]
    if isinstance(f, PolyElement):
        return f.subs(pairs) if pairs else f
    n = f.numer.subs(pairs) if pairs else f.numer
    d = f.denom.subs(pairs) if pairs else f.denom
    if not d:
        raise ZeroDivisionError("denominator vanishes under substitution")
    return u.field(n) / u.field(d)


@lru_cache(maxsize=None)
def _sub_ring(symbols: tuple) -> PolyRing:
    return PolyRing(symbols, QQ, ORDER)


def _compact(polys: Sequence[MPoly], first: str | None = None):
    """Move ``polys`` into a ring over only the generators they use.

    Sympy's multivariate gcd and resultant recurse once per generator, so
    idle generators cost time.  ``first`` forces a generator to the front.
    Returns the moved polynomials and a function mapping results back.
    """
    ring = polys[0].ring
    used = set()
    for p in polys:
        for m in p.monoms():
            used.update(i for i, e in enumerate(m) if e)
    syms = [str(s) for s in ring.symbols]
    idx = sorted(used)
    if first is not None:
        fi = syms.index(first)
        idx = [fi] + [i for i in idx if i != fi]
    if not idx:
        idx = [0]
    small = _sub_ring(tuple(syms[i] for i in idx))
    n = len(syms)

    def down(p):
        return small.from_dict({tuple(m[i] for i in idx): c for m, c in p.terms()})

    def up(q):
        if not isinstance(q, PolyElement):
            return ring.ground_new(q)
        out = {}
        # a resultant lives in a ring with the eliminated generator dropped
        pos = [idx[small.symbols.index(s)] for s in q.ring.symbols]
        for m, c in q.terms():
            full = [0] * n
            for i, e in zip(pos, m):
                full[i] = e
            out[tuple(full)] = c
        return ring.from_dict(out)

    return [down(p) for p in polys], up


def mp_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, normalized to leading coefficient 1."""
    if not a and not b:
        return a.ring.zero
    if a.ring.ngens <= 2:
        return a.gcd(b).monic()
    (sa, sb), up = _compact([a, b])
    return up(sa.gcd(sb)).monic()


def mp_lcm(a: MPoly, b: MPoly) -> MPoly:
    return a.lcm(b).monic()


def resultant(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Resultant of ``a`` and ``b`` with respect to ``var`` (subresultant PRS)."""
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    (sa, sb), up = _compact([a, b], first=var)
    return up(sa.resultant(sb))


def content_pp(a: MPoly, block: Iterable[str]) -> tuple[MPoly, MPoly]:
    """Content and primitive part of ``a`` over ``Q[block]``.

    ``a`` is viewed as a polynomial in the variables outside ``block`` with
    coefficients in ``Q[block]``.
    """
    if not a:
        raise ValueError("content of zero")
    u = universe_of(a)
    keep = [u.index(b) for b in block]
    groups: dict[tuple, dict] = defaultdict(dict)
    for monom, c in a.terms():
        outer = tuple(0 if i in keep else e for i, e in enumerate(monom))
        inner = tuple(e if i in keep else 0 for i, e in enumerate(monom))
        groups[outer][inner] = c
    cont = reduce(mp_gcd, (a.ring.from_dict(d) for d in groups.values()))
    return cont, a.exquo(cont)


@dataclass(frozen=True)
class SqfreeDecomp:
    parts: tuple[tuple[MPoly, int], ...]

    def expand(self) -> MPoly:
        out = None
        for f, m in self.parts:
            out = f**m if out is None else out * f**m
        return out

    def __iter__(self):
        return iter(self.parts)


def sqfree_decomp(a: MPoly, var: str) -> SqfreeDecomp:
    """Yun squarefree decomposition of ``a`` with respect to ``var``.

    The content (the part free of ``var``) is decomposed as a multivariate
    polynomial and merged by multiplicity.
    """
    if not a:
        raise ValueError("squarefree decomposition of zero")
    u = universe_of(a)
    others = [s for s in u.symbols if s != var]
    cont, pp = content_pp(a, others)
    by_mult: dict[int, MPoly] = {}
    if degree(pp, var) > 0:
        dp = diff(pp, var)
        g = mp_gcd(pp, dp)
        w, y = pp.exquo(g), dp.exquo(g)
        i = 1
        while degree(w, var) > 0:
            z = y - diff(w, var)
            h = mp_gcd(w, z)
            if degree(h, var) > 0:
                by_mult[i] = h
            w, y = w.exquo(h), z.exquo(h)
            i += 1
    if not cont.is_ground:
        _, cparts = cont.sqf_list()
        for f, m in cparts:
            by_mult[m] = by_mult[m] * f if m in by_mult else f
    return SqfreeDecomp(tuple((f.monic(), m) for m, f in sorted(by_mult.items())))


# --- univariate view: Q(others)[var] -------------------------------------------


class UniView:
    """Conversion between the universe and ``Q(others)[var]``.

    The univariate ring is a sympy ``PolyRing`` over the fraction field of the
    remaining generators, which gives Euclidean division, ``gcdex`` and
    resultants over that field for free.  ``others`` holds only ``t``, the
    parameters and any requested ``extra`` names, since every idle generator
    slows down coefficient arithmetic.
    """

    def __init__(self, u: VarUniverse, var: str, extra: tuple[str, ...] = ()):
        self.u = u
        self.var = var
        self.i = u.index(var)
        keep = {T, *u.params, *extra} - {var}
        others = tuple(s for s in u.symbols if s in keep)
        self.others = others
        self._oi = tuple(u.index(s) for s in others)
        self._idle = tuple(j for j in range(len(u.symbols)) if j != self.i and j not in self._oi)
        self.K = FracField(others, QQ, ORDER)
        self.R = PolyRing((var,), self.K.to_domain(), ORDER)
        self.x = self.R.gens[0]

    def to_uni(self, p: MPoly):
        i, oi = self.i, self._oi
        parts: dict[int, dict] = defaultdict(dict)
        for monom, c in p.terms():
            if any(monom[j] for j in self._idle):
                raise ValueError(f"polynomial involves variables outside {(self.var,) + self.others}")
            parts[monom[i]][tuple(monom[j] for j in oi)] = c
        kr = self.K.ring
        return self.R.from_dict({(k,): self.K(kr.from_dict(d)) for k, d in parts.items()})

    def frac_to_uni(self, f: Elem):
        """Return ``(num, den)`` in the univariate ring, ``den`` monic."""
        n, d = numer_denom(f)
        nu, du = self.to_uni(n), self.to_uni(d)
        lc = du.LC
        return nu.quo_ground(lc), du.monic()

    def _lift(self, p, k: int = 0) -> MPoly:
        n = len(self.u.symbols)
        out = {}
        for m, c in p.terms():
            full = [0] * n
            full[self.i] = k
            for j, e in zip(self._oi, m):
                full[j] = e
            out[tuple(full)] = c
        return self.u.ring.from_dict(out)

    def coeff_to_frac(self, c) -> RatFunc:
        f = self.u.field
        return f(self._lift(c.numer)) / f(self._lift(c.denom))

    def from_uni(self, p) -> RatFunc:
        """Map a univariate polynomial back to a rational function of the universe."""
        field = self.u.field
        if not p:
            return field.zero
        terms = list(p.terms())
        den = reduce(lambda a, b: a.lcm(b), (c.denom for _, c in terms))
        num = self.u.ring.zero
        for (k,), c in terms:
            num += self._lift(c.numer * den.exquo(c.denom), k)
        return field(num) / field(self._lift(den))

    def gcd(self, a, b):
        """Monic gcd in ``Q(others)[var]``, computed as a multivariate gcd over ``Q``."""
        if not a or not b:
            return (a or b).monic() if (a or b) else a
        g = mp_gcd(self.from_uni(a).numer, self.from_uni(b).numer)
        return self.to_uni(g).monic()

    def ratio_from_uni(self, n, d) -> RatFunc:
        return self.from_uni(n) / self.from_uni(d)

    def coeff(self, f: RatFunc):
        """Embed a rational function free of ``var`` into the coefficient field."""
        n, d = numer_denom(f)
        nu, du = self.to_uni(n), self.to_uni(d)
        if nu.degree() > 0 or du.degree() > 0:
            raise ValueError(f"coefficient depends on {self.var}")
        return nu.LC / du.LC


@lru_cache(maxsize=None)
def uni_view(u: VarUniverse, var: str, extra: tuple[str, ...] = ()) -> UniView:
    return UniView(u, var, extra)


def view_of(f: Elem, var: str, extra: tuple[str, ...] = ()) -> UniView:
    return uni_view(universe_of(f), var, extra)


# --- partial fractions -------------------------------------------------------


@dataclass(frozen=True)
class PartialFraction:
    """``polypart + sum(num / factor**power)`` with respect to ``var``."""

    var: str
    polypart: RatFunc
    fracparts: tuple[tuple[MPoly, int, RatFunc], ...]

    def recombine(self) -> RatFunc:
        out = self.polypart
        for fac, k, num in self.fracparts:
            out = out + num / out.field(fac) ** k
        return out


def partial_fractions(f: RatFunc, var: str,
                      factors: Union[SqfreeDecomp, Sequence[tuple[MPoly, int]]]) -> PartialFraction:
    """Partial fraction decomposition of ``f`` over a given coprime factorization.

    ``factors`` is a list of ``(factor, power)`` pairs whose product equals the
    denominator of ``f`` up to a factor free of ``var``.  Numerators have
    ``var``-degree below that of their factor.
    """
    f = universe_of(f).frac(f)
    view = view_of(f, var)
    factors = [(view.u.poly(fac), int(k)) for fac, k in factors if degree(view.u.poly(fac), var) > 0]
    num, den = view.frac_to_uni(f)
    prod = view.R.one
    ufacs = []
    for fac, k in factors:
        fu = view.to_uni(fac)
        ufacs.append((fac, fu, k))
        prod *= fu.monic() ** k
    if prod != den:
        raise ValueError("factor list does not multiply to the denominator")
    q, r = num.div(den)
    parts = []
    for fac, fu, k in ufacs:
        fm = fu.monic()
        fe = fm**k
        other = den.exquo(fe)
        s, _, h = other.gcdex(fe)
        if h.degree() > 0:
            raise ValueError("factors are not pairwise coprime")
        s = s.quo_ground(h.LC)
        n_i = (r * s).rem(fe)
        scale = view.coeff_to_frac(fu.LC)  # fac == scale * fm
        j = 0
        while n_i:
            n_i, digit = n_i.div(fm)
            if digit:
                power = k - j
                parts.append((fac, power, view.from_uni(digit) * scale**power))
            j += 1
    return PartialFraction(var, view.from_uni(q), tuple(parts))
