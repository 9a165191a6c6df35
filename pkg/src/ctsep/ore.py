"""Ore operators in ``Q(t)<D>`` and ``Q(t)<S>``.

``D`` acts as d/dt with ``D*a = a*D + a'``; ``S`` is the shift ``t -> t+1``
with ``S*a = sigma(a)*S``.  Coefficients live in a fixed field ``Q(t)`` so
that operators from different universes compare equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.rings import PolyElement

from .kernel import ORDER, T, RatFunc, diff, qq, shift, universe_of, variables
from .linalg import first_dependency

DERIVATION = "derivation"
SHIFT = "shift"
KINDS = (DERIVATION, SHIFT)

TFIELD = FracField((T,), QQ, ORDER)
_t = TFIELD.gens[0]


def tcoeff(c) -> FracElement:
    """Coerce a value free of parameters into ``Q(t)``."""
    if isinstance(c, FracElement) and c.field is TFIELD:
        return c
    if isinstance(c, PolyElement) and c.ring is TFIELD.ring:
        return TFIELD(c)
    if isinstance(c, (FracElement, PolyElement)):
        extra = variables(c) - {T}
        if extra:
            raise ValueError(f"operator coefficient involves parameters {sorted(extra)}")
        if isinstance(c, PolyElement):
            c = universe_of(c).frac(c)
        return c.set_field(TFIELD)
    return TFIELD(TFIELD.ring.ground_new(qq(c)))


def sigma(c: FracElement, k: int = 1) -> FracElement:
    if k == 0 or not c:
        return c
    return TFIELD(c.numer.compose(_t.numer, _t.numer + k)) / TFIELD(c.denom.compose(_t.numer, _t.numer + k))


def delta(c: FracElement) -> FracElement:
    return c.diff(_t)


def _check_kind(kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")


@dataclass(frozen=True, eq=False)
class OrePoly:
    """``sum(coeffs[i] * d**i)`` with ``d`` the derivation or the shift in ``t``."""

    kind: str
    coeffs: tuple

    def __post_init__(self):
        _check_kind(self.kind)
        cs = [tcoeff(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def scalar(cls, kind: str, c) -> "OrePoly":
        return cls(kind, (c,))

    @classmethod
    def one(cls, kind: str) -> "OrePoly":
        return cls(kind, (1,))

    @classmethod
    def gen(cls, kind: str) -> "OrePoly":
        return cls(kind, (0, 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.kind == other.kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.coeffs))

    def _like(self, other: "OrePoly"):
        if not isinstance(other, OrePoly):
            other = OrePoly.scalar(self.kind, other)
        if other.kind != self.kind:
            raise ValueError(f"kind mismatch: {self.kind} vs {other.kind}")
        return other

    def __add__(self, other):
        other = self._like(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = TFIELD.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return OrePoly(self.kind, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.kind, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._like(other))

    def __rsub__(self, other):
        return self._like(other) - self

    def __mul__(self, other):
        return ore_mul(self, self._like(other))

    def __rmul__(self, other):
        return ore_mul(self._like(other), self)

    def __pow__(self, n: int):
        out = OrePoly.one(self.kind)
        for _ in range(n):
            out = out * self
        return out

    def lmul(self, c) -> "OrePoly":
        """Left multiplication by a scalar of ``Q(t)``."""
        c = tcoeff(c)
        return OrePoly(self.kind, tuple(c * a for a in self.coeffs))

    def monic(self) -> "OrePoly":
        if not self:
            return self
        return self.lmul(1 / self.lc)

    def __str__(self):
        return format_operator(self)

    def __repr__(self):
        return f"OrePoly({self.kind!r}, {format_operator(self)!r})"


def _gen_times(B: OrePoly) -> OrePoly:
    """``d * B``."""
    z = TFIELD.zero
    out = [z] * (len(B.coeffs) + 1)
    for j, b in enumerate(B.coeffs):
        if B.kind == DERIVATION:
            out[j] += delta(b)
            out[j + 1] += b
        else:
            out[j + 1] += sigma(b)
    return OrePoly(B.kind, tuple(out))


def ore_mul(A: OrePoly, B: OrePoly) -> OrePoly:
    """Product ``A*B`` in the skew polynomial ring."""
    if A.kind != B.kind:
        raise ValueError(f"kind mismatch: {A.kind} vs {B.kind}")
    out = OrePoly(A.kind, ())
    power = B
    for i, a in enumerate(A.coeffs):
        if i:
            power = _gen_times(power)
        if a:
            out = out + power.lmul(a)
    return out


def _act(kind: str, f, k: int):
    for _ in range(k):
        f = diff(f, T) if kind == DERIVATION else shift(f, T, 1)
    return f


def ore_apply(L: OrePoly, f: RatFunc) -> RatFunc:
    """``L(f)`` for a rational function ``f`` of any universe."""
    u = universe_of(f)
    f = u.frac(f)
    out = u.field.zero
    g = f
    for i, c in enumerate(L.coeffs):
        if i:
            g = _act(L.kind, g, 1)
        if c:
            out += u.frac(c) * g
    return out


def _gen_power_lc(B: OrePoly, d: int):
    return B.lc if B.kind == DERIVATION else sigma(B.lc, d)


def ore_rdivrem(A: OrePoly, B: OrePoly) -> tuple[OrePoly, OrePoly]:
    """Right division: ``A == Q*B + R`` with ``order(R) < order(B)``."""
    if not B:
        raise ZeroDivisionError("right division by the zero operator")
    if A.kind != B.kind:
        raise ValueError(f"kind mismatch: {A.kind} vs {B.kind}")
    Q = OrePoly(A.kind, ())
    R = A
    gen = OrePoly.gen(A.kind)
    while R and R.order >= B.order:
        d = R.order - B.order
        c = R.lc / _gen_power_lc(B, d)
        term = (gen ** d).lmul(c)
        Q = Q + term
        R = R - term * B
    return Q, R


def ore_gcrd(A: OrePoly, B: OrePoly) -> OrePoly:
    """Greatest common right divisor, monic."""
    while B:
        A, B = B, ore_rdivrem(A, B)[1]
    return A.monic()


def ore_lclm(ops: Sequence[OrePoly]) -> OrePoly:
    """Monic least common left multiple.

    Finds the least ``N`` for which the right remainders of ``1, d, ..., d^N``
    modulo every operator are linearly dependent over ``Q(t)``; the relation
    is the LCLM.  The search stops at ``sum(order)``, which is always reached.
    """
    ops = list(ops)
    if not ops:
        raise ValueError("LCLM of an empty list")
    kind = ops[0].kind
    for L in ops:
        if L.kind != kind:
            raise ValueError("kind mismatch in LCLM")
        if not L:
            raise ValueError("LCLM with the zero operator")
    ops = [L.monic() for L in ops]
    bound = sum(L.order for L in ops)
    z = TFIELD.zero
    rems = [OrePoly.one(kind) for _ in ops]
    rems = [ore_rdivrem(r, L)[1] for r, L in zip(rems, ops)]
    vectors = []
    for _ in range(bound + 1):
        vec = []
        for r, L in zip(rems, ops):
            vec.extend(r.coeffs + (z,) * (L.order - len(r.coeffs)))
        vectors.append(vec)
        rems = [ore_rdivrem(_gen_times(r), L)[1] for r, L in zip(rems, ops)]
    if bound == 0:
        return OrePoly.one(kind)
    n, rel = first_dependency(vectors, z, TFIELD.one)
    return OrePoly(kind, tuple(rel[: n + 1]))


def _fmt_coeff(c) -> str:
    return str(c.as_expr()).replace(" ", "").replace("**", "^")


def _is_sum(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_operator(L: OrePoly) -> str:
    """Re-parseable text such as ``(t+1)*S - t``."""
    if not L:
        return "0"
    g = "D" if L.kind == DERIVATION else "S"
    terms = []
    for i in range(L.order, -1, -1):
        c = L.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (g if i == 1 else f"{g}^{i}")
        s = _fmt_coeff(c)
        neg = False
        if s.startswith("-"):
            flipped = _fmt_coeff(-c)
            if not flipped.startswith("-"):
                neg, s = True, flipped
        compound = _is_sum(s)
        if not mono:
            body = f"({s})" if compound and (neg or len(L.coeffs) > 1) else s
        elif s == "1":
            body = mono
        else:
            body = (f"({s})" if compound else s) + "*" + mono
        terms.append(("-" if neg else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def primitive(L: OrePoly) -> OrePoly:
    """The left ``Q(t)``-multiple of ``L`` with coprime integer-polynomial coefficients.

    The leading coefficient of the top-order term is made positive.
    """
    if not L:
        return L
    ring = TFIELD.ring
    den = reduce(lambda a, b: a.lcm(b), (c.denom for c in L.coeffs), ring.one)
    scaled = [c * TFIELD(den) for c in L.coeffs]
    nums = [c.numer.quo_ground(c.denom.LC) for c in scaled]
    g = reduce(lambda a, b: a.gcd(b), nums, ring.zero)
    nums = [n.exquo(g) if n else n for n in nums]
    scale = 1
    for n in nums:
        for _, c in n.terms():
            scale = math.lcm(scale, int(c.denominator))
    ints = [int(c.numerator * (scale // int(c.denominator))) for n in nums for _, c in n.terms()]
    content = reduce(math.gcd, ints, 0)
    factor = QQ(scale, content)
    if nums[-1].LC < 0:
        factor = -factor
    return OrePoly(L.kind, tuple(n * factor for n in nums))
