"""Deciders for separability in ``t`` and bivariate telescoper existence.

A function of ``t`` and parameters is separable when some nonzero operator
in ``Q(t)<D>`` (or ``Q(t)<S>``) annihilates it.  Rational functions are
separable exactly when their denominator splits into a ``t``-part times a
parameter part.  Hyperexponential and hypergeometric terms are decided from
their certificate ``a`` through canonical forms.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .kernel import (
    RESIDUE_VAR,
    T,
    MPoly,
    RatFunc,
    content_pp,
    degree,
    diff,
    mp_gcd,
    mp_lcm,
    partial_fractions,
    shift,
    universe_of,
    variables,
    uni_view,
    view_of,
)
from .ore import DERIVATION, KINDS, SHIFT, TFIELD, OrePoly, ore_apply, ore_lclm, primitive
from .reductions import ReductionResult, abramov_reduce, hermite_parts, hermite_reduce
from .valdis import integer_roots, integer_shifts


class DegenerateInput(ValueError):
    """The certificate ``a`` is zero, so the term is constant in ``t``."""


@dataclass(frozen=True)
class Verdict:
    separable: bool
    certificate: Optional[OrePoly] = None
    witnesses: dict = field(default_factory=dict)
    diagnostics: str = ""


# --- splitness ------------------------------------------------------------------


def is_split(q: MPoly, partition: Sequence[Sequence[str]]) -> bool:
    """Whether ``q`` is a product of polynomials each in one block of variables."""
    if not q:
        raise ValueError("splitness of the zero polynomial")
    rest = q
    for block in partition:
        _, rest = content_pp(rest, list(block))
    return rest.is_ground


def split_part(d: MPoly) -> tuple[MPoly, MPoly]:
    """``(d_split, d_nonsplit)``: the largest divisor of ``d`` in ``Q[t]`` and the cofactor.

    The divisor is ``gcd(d(t, x), d(t, x~))`` for fresh copies ``x~`` of the
    parameters; a common factor cannot involve either copy.
    """
    u = universe_of(d)
    d = u.poly(d)
    if not d:
        raise ValueError("split part of zero")
    dup = d.compose([(u.gen(p), u.gen(q)) for p, q in u.dup.items()]) if u.params else d
    g = mp_gcd(d, dup)
    return g, d.exquo(g)


def _poly_in_t(f: RatFunc) -> bool:
    return variables(f) <= {T}


# --- rational functions -------------------------------------------------------


def _first_order(a: RatFunc, kind: str) -> OrePoly:
    """Monic first-order annihilator of ``a`` in ``Q(t)``."""
    if kind == DERIVATION:
        return OrePoly(kind, (-(diff(a, T) / a), 1))
    return OrePoly(kind, (-(shift(a, T, 1) / a), 1))


def rational_separable(f: RatFunc, kind: str = DERIVATION) -> Verdict:
    """Decide separability of a rational function; certify with an LCLM."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    u = universe_of(f)
    f = u.frac(f)
    if not f:
        return Verdict(True, OrePoly.one(kind), {"terms": []}, "zero function")
    params = [p for p in u.params]
    den = f.denom
    dx, dt = content_pp(den, params)
    if not _poly_in_t(u.frac(dt)):
        return Verdict(False, None, {"denominator": den},
                       "denominator is not split with respect to ({t}, params)")
    i = u.index(T)
    groups: dict[tuple, dict] = defaultdict(dict)
    for monom, c in f.numer.terms():
        key = monom[:i] + (0,) + monom[i + 1:]
        groups[key][monom] = c
    terms = []
    ops = []
    field_ = u.field
    for key in sorted(groups):
        c_t = u.ring.from_dict({tuple(e if k == i else 0 for k, e in enumerate(m)): c
                                for m, c in groups[key].items()})
        a = field_(c_t) / field_(dt)
        b = field_(u.ring.from_dict({key: QQ.one})) / field_(dx)
        terms.append((a, b))
        ops.append(_first_order(a, kind))
    L = ore_lclm(ops)
    if ore_apply(L, f):
        raise AssertionError("certificate failed verification")
    return Verdict(True, L, {"terms": terms}, f"{len(terms)} split term(s)")


# --- hypergeometric terms ----------------------------------------------------------


@dataclass(frozen=True)
class GPForm:
    """``a = z * sigma(p)/p * q/rhat`` with the shift-coprimality conditions."""

    z: RatFunc
    p: RatFunc
    q: RatFunc
    rhat: RatFunc

    def recombine(self) -> RatFunc:
        return self.z * shift(self.p, T, 1) / self.p * self.q / self.rhat


def _big(view, p) -> MPoly:
    return view.from_uni(p).numer


def gp_form(a: RatFunc) -> GPForm:
    """Canonical Gosper-Petkovsek form of a nonzero rational function."""
    u = universe_of(a)
    a = u.frac(a)
    if not a:
        raise DegenerateInput("GP form of zero")
    view = view_of(a, T)
    x = view.x
    num, den = view.frac_to_uni(a)
    z = num.LC
    q, r, p = num.monic(), den, view.R.one

    def sig(h, k=1):
        return h.compose(x, x + k)

    for _ in range(1000):
        ks = integer_shifts(_big(view, q), _big(view, r), T) if q.degree() > 0 and r.degree() > 0 else []
        if ks:
            k = ks[0]
            g = view.gcd(q, sig(r, k))
            q = q.exquo(g)
            r = r.exquo(sig(g, -k))
            for j in range(1, k + 1):
                p = p * sig(g, -j)
            continue
        w = view.gcd(q, p)
        if w.degree() > 0:
            p = p.exquo(w)
            q = sig(w) * q.exquo(w)
            continue
        w = view.gcd(r, sig(p))
        if w.degree() > 0:
            p = p.exquo(sig(w, -1))
            r = sig(w, -1) * r.exquo(w)
            continue
        break
    else:  # pragma: no cover - defensive
        raise RuntimeError("GP form normalization did not terminate")
    form = GPForm(view.coeff_to_frac(z), view.from_uni(p), view.from_uni(q), view.from_uni(r))
    if form.recombine() != a:
        raise AssertionError("GP form does not recombine")
    return form


def hypergeom_separable(a: RatFunc) -> Verdict:
    """Decide separability of a hypergeometric term from ``a = sigma(H)/H``."""
    form = gp_form(a)
    reasons = []
    if variables(form.z):
        reasons.append("z involves parameters")
    if not _poly_in_t(form.q):
        reasons.append("q is not in Q[t]")
    if not _poly_in_t(form.rhat):
        reasons.append("rhat is not in Q[t]")
    ok = not reasons
    return Verdict(ok, None, {"gp_form": form},
                   "z in Q and q, rhat in Q[t]" if ok else "; ".join(reasons))


# --- hyperexponential functions --------------------------------------------------


@dataclass(frozen=True)
class DiffSplitForm:
    """``a = D(g) + polypart + split_simple + nonsplit_num/nonsplit_den``."""

    g: RatFunc
    polypart: RatFunc
    split_simple: RatFunc
    nonsplit_den: MPoly
    nonsplit_num: RatFunc
    residue_resultant: RatFunc

    def recombine(self) -> RatFunc:
        f = self.g.field
        return (diff(self.g, T) + self.polypart + self.split_simple
                + self.nonsplit_num / f(self.nonsplit_den))


def _primitive_in_t(view, du) -> MPoly:
    """Primitive ``Q[t, params]`` polynomial with the same roots as monic ``du``."""
    n = view.from_uni(du).numer
    u = view.u
    return content_pp(n, [s for s in u.symbols if s != T])[1]


def diff_split_form(a: RatFunc) -> DiffSplitForm:
    u = universe_of(a)
    a = u.frac(a)
    view = view_of(a, T)
    g, poly, simple = hermite_parts(a, T)
    field_ = u.field
    if not simple:
        dn = u.ring.one
        split_simple = field_.zero
        n2 = field_.zero
    else:
        _, du = view.frac_to_uni(simple)
        d = _primitive_in_t(view, du)
        ds, dn = split_part(d)
        pf = partial_fractions(simple, T, [(ds, 1), (dn, 1)])
        split_simple = field_.zero
        n2 = field_.zero
        for fac, _, numr in pf.fracparts:
            if fac == ds:
                split_simple += numr / field_(ds)
            else:
                n2 = numr
    res = _residue_resultant(view, dn, n2)
    form = DiffSplitForm(g, poly, split_simple, dn, n2, res)
    if form.recombine() != a:
        raise AssertionError("differential split form does not recombine")
    return form


def _residue_resultant(view, dn: MPoly, n2: RatFunc) -> RatFunc:
    """Monic ``Res_t(dn, n2 - z*dn')`` in the residue variable."""
    u = view.u
    zf = u.fgen(RESIDUE_VAR)
    if degree(dn, T) <= 0:
        return u.field.one
    view = uni_view(u, T, (RESIDUE_VAR,))
    dnu = view.to_uni(dn)
    nu, nd = view.frac_to_uni(n2)
    zc = view.coeff(zf)
    rhs = nu - zc * dnu.diff(view.x) * nd
    res = dnu.resultant(rhs)
    resf = view.coeff_to_frac(res)
    zview = view_of(resf, RESIDUE_VAR)
    rn, _ = zview.frac_to_uni(resf)
    return zview.from_uni(rn.monic())


def _nonnegative_integer_roots(p: MPoly, var: str) -> Optional[list[int]]:
    """Distinct roots of ``p`` if every root is a nonnegative integer, else ``None``."""
    roots = integer_roots(p, var)
    _, factors = p.factor_list()
    linear = sum(k for f, k in factors if degree(f, var) == 1 and
                 any(not f.compose(universe_of(f).gen(var), e) for e in roots))
    if linear != degree(p, var) or any(e < 0 for e in roots):
        return None
    return roots


def hyperexp_separable(a: RatFunc) -> Verdict:
    """Decide separability of a hyperexponential function from ``a = D(H)/H``."""
    u = universe_of(a)
    a = u.frac(a)
    if not a:
        raise DegenerateInput("hyperexponential certificate is zero")
    form = diff_split_form(a)
    wit = {"diff_split_form": form}
    if not _poly_in_t(form.g):
        return Verdict(False, None, wit, "Hermite part is not in Q(t)")
    if not _poly_in_t(form.polypart):
        return Verdict(False, None, wit, "polynomial part is not in Q[t]")
    if not _poly_in_t(form.split_simple):
        return Verdict(False, None, wit, "split simple part is not in Q(t)")
    if degree(form.nonsplit_den, T) <= 0:
        return Verdict(True, None, wit, "no non-split poles")
    res = form.residue_resultant
    if not variables(res) <= {RESIDUE_VAR}:
        return Verdict(False, None, wit, "residues depend on parameters")
    roots = _nonnegative_integer_roots(res.numer, RESIDUE_VAR)
    if roots is None:
        return Verdict(False, None, wit, "residues are not all nonnegative integers")
    view = view_of(a, T)
    dnu = view.to_uni(form.nonsplit_den).monic()
    nu, nd = view.frac_to_uni(form.nonsplit_num)
    ddn = dnu.diff(view.x)
    recon = u.field.zero
    logs = []
    for e in roots:
        ui = view.gcd(dnu, nu - ddn * nd * e)
        logs.append((e, view.from_uni(ui)))
        recon += e * view.ratio_from_uni(ui.diff(view.x), ui)
    if recon != form.nonsplit_num / u.field(form.nonsplit_den):
        return Verdict(False, None, wit, "residue decomposition does not reconstruct")
    wit["log_part"] = logs
    return Verdict(True, None, wit, "a = D(p)/p + r with p in Q(params)[t], r in Q(t)")


# --- telescopers ---------------------------------------------------------------------


def _bivariate_param(f: RatFunc) -> str:
    u = universe_of(f)
    extra = variables(f) - {T}
    if len(extra) > 1:
        raise ValueError(f"telescoper deciders take one parameter, got {sorted(extra)}")
    if extra:
        return extra.pop()
    if not u.params:
        raise ValueError("no parameter variable declared")
    return u.params[0]


def _telescoper(f: RatFunc, red: ReductionResult, kind: str) -> Verdict:
    wit = {"reduction": red}
    rem = red.remainder
    if not rem:
        return Verdict(True, OrePoly.one(kind), wit, "reduction remainder is zero")
    sub = rational_separable(rem, kind)
    if not sub.separable:
        return Verdict(False, None, wit, "remainder is not separable: " + sub.diagnostics)
    L = primitive(sub.certificate)
    if ore_apply(L, rem):
        raise AssertionError("telescoper certificate failed verification")
    return Verdict(True, L, wit, "remainder is separable")


def telescoper_exists_st_dx(f: RatFunc) -> Verdict:
    """Telescoper of type (S_t, D_x): Hermite-reduce in x, then test S_t-separability."""
    x = _bivariate_param(f)
    return _telescoper(f, hermite_reduce(f, x), SHIFT)


def telescoper_exists_dt_sx(f: RatFunc) -> Verdict:
    """Telescoper of type (D_t, S_x): Abramov-reduce in x, then test D_t-separability."""
    x = _bivariate_param(f)
    return _telescoper(f, abramov_reduce(f, x), DERIVATION)


# --- brute-force oracle ------------------------------------------------------------------


Action = Callable[[list], list]


def rational_action(kind: str) -> Action:
    if kind == DERIVATION:
        return lambda v: [diff(c, T) for c in v]
    return lambda v: [shift(c, T, 1) for c in v]


def hyperexp_action(a: RatFunc) -> Action:
    """``D(c H) = (c' + a c) H``."""
    return lambda v: [diff(c, T) + a * c for c in v]


def hypergeom_action(a: RatFunc) -> Action:
    """``S(c H) = sigma(c) a H``."""
    return lambda v: [shift(c, T, 1) * a for c in v]


def _orbit(coords, action, order):
    out = [list(coords)]
    for _ in range(order):
        out.append(action(out[-1]))
    return out


def _cleared(orbit):
    """Orbit numerators over one common denominator per component."""
    comps = []
    for k in range(len(orbit[0])):
        vals = [step[k] for step in orbit]
        den = vals[0].denom
        for v in vals[1:]:
            den = mp_lcm(den, v.denom)
        comps.append([v.numer * den.exquo(v.denom) for v in vals])
    return comps


def _solve(comps, order, deg, ti):
    """Nullspace of the linear system for unknown ``t^j`` coefficients of ``l_i``."""
    index: dict = {}
    rows: dict = defaultdict(dict)
    ci = 0
    for i in range(order + 1):
        for j in range(deg + 1):
            for k, comp in enumerate(comps):
                for m, c in comp[i].terms():
                    mm = list(m)
                    mm[ti] += j
                    r = index.setdefault((k, tuple(mm)), len(index))
                    rows[r][ci] = c
            ci += 1
    if not index:
        return [[QQ.one if c == 0 else QQ.zero for c in range(ci)]]
    return DomainMatrix(dict(rows), (len(index), ci), QQ).nullspace().to_list()


def _to_operator(vec, order, deg, kind):
    t = TFIELD.gens[0]
    coeffs = []
    for i in range(order + 1):
        c = TFIELD.zero
        for j in range(deg + 1):
            v = vec[i * (deg + 1) + j]
            if v:
                c += v * t**j
        coeffs.append(c)
    return primitive(OrePoly(kind, tuple(coeffs)))


def _least(ok: Callable[[int], bool], hi: int) -> int:
    """Least ``k`` in ``[0, hi]`` with ``ok(k)``, given ``ok`` monotone and ``ok(hi)``."""
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def brute_force_annihilator(coords: Sequence[RatFunc], kind: str, max_order: int,
                            max_coeff_degree: int, action: Optional[Action] = None,
                            minimal: bool = True) -> Optional[OrePoly]:
    """Search for ``L = sum l_i d^i`` with ``l_i`` in ``Q[t]`` annihilating ``coords``.

    ``coords`` are the coordinates of a function in a fixed basis; ``action``
    maps coordinates to those of ``d`` applied to the function (componentwise
    ``D`` or ``S`` by default).  With ``minimal`` the returned operator has
    least order and then least coefficient degree.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    coords = [c for c in coords]
    if not coords:
        raise ValueError("empty coordinate vector")
    u = universe_of(coords[0])
    coords = [u.frac(c) for c in coords]
    action = action or rational_action(kind)
    ti = u.index(T)
    if not any(coords):
        return OrePoly.one(kind)
    orbit = _cleared(_orbit(coords, action, max_order))
    ns = _solve(orbit, max_order, max_coeff_degree, ti)
    if not ns:
        return None
    if not minimal:
        return _to_operator(ns[0], max_order, max_coeff_degree, kind)
    # existence is monotone in both bounds, so bisect for the least order, then degree
    order = _least(lambda k: bool(_solve(orbit, k, max_coeff_degree, ti)), max_order)
    deg = _least(lambda d: bool(_solve(orbit, order, d, ti)), max_coeff_degree)
    return _to_operator(_solve(orbit, order, deg, ti)[0], order, deg, kind)
