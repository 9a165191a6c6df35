"""Arithmetic in ``K(t) = Q(params, t)[z]/<m(z)>`` and dense polynomials over fields.

``m`` has coefficients in ``Q(params)``.  Components of a :class:`KElem` are
rational functions of the universe, so the same class covers constants of
``K`` (components free of ``t``) and elements of ``K(t)``.
"""
from __future__ import annotations

from typing import Callable, Sequence

from ..kernel import T, RatFunc, VarUniverse, degree, diff, subs, variables


class ZeroDivisorError(ArithmeticError):
    """Inversion hit a zero divisor: the extension polynomial is reducible."""

    def __init__(self, factor):
        super().__init__(f"extension polynomial has the factor {factor}")
        self.factor = factor


# --- dense univariate polynomials over an exact field --------------------------------
# A polynomial is a list of coefficients, lowest degree first, without trailing zeros.


def ptrim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def padd(a: Sequence, b: Sequence, zero) -> list:
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)])


def pneg(a: Sequence) -> list:
    return [-c for c in a]


def psub(a: Sequence, b: Sequence, zero) -> list:
    return padd(a, pneg(b), zero)


def pscale(a: Sequence, c) -> list:
    return ptrim([c * x for x in a])


def pmul(a: Sequence, b: Sequence, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pdivmod(a: Sequence, b: Sequence, zero) -> tuple[list, list]:
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = ptrim(a)
    if len(r) < len(b):
        return [], r
    q = [zero] * (len(r) - len(b) + 1)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] * inv
        q[k] = c
        r = list(r)
        for i, y in enumerate(b):
            if y:
                r[k + i] = r[k + i] - c * y
        r = ptrim(r[:-1])
    return ptrim(q), r


def pgcdex(a: Sequence, b: Sequence, zero, one) -> tuple[list, list, list]:
    """``(s, t, g)`` with ``s*a + t*b == g`` and ``g`` monic (or zero)."""
    r0, r1 = ptrim(a), ptrim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = pdivmod(r0, r1, zero)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, zero), zero)
        t0, t1 = t1, psub(t0, pmul(q, t1, zero), zero)
    if r0:
        inv = 1 / r0[-1]
        r0, s0, t0 = pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)
    return s0, t0, r0


def pderiv(a: Sequence) -> list:
    return ptrim([a[i] * i for i in range(1, len(a))])


def peval(a: Sequence, x, zero):
    out = zero
    for c in reversed(a):
        out = out * x + c
    return out


def power_sums(monic: Sequence, count: int, zero) -> list:
    """Newton power sums ``p_0..p_{count-1}`` of the roots of a monic polynomial."""
    n = len(monic) - 1
    c = lambda i: monic[i]  # noqa: E731
    p = [zero + n]
    for k in range(1, count):
        s = zero
        for i in range(1, min(k, n + 1)):
            s = s + c(n - i) * p[k - i]
        if k <= n:
            s = s + c(n - k) * k
        p.append(-s)
    return p


# --- the tower ---------------------------------------------------------------------------


class FieldTower:
    """``Q(params)[z]/<m>`` (and its extension by ``t``).

    ``minpoly`` lists the coefficients of ``m`` from degree 0 upwards; it is
    made monic.  No irreducibility test is run: a failed inversion raises
    :class:`ZeroDivisorError` with the offending factor.
    """

    def __init__(self, u: VarUniverse, minpoly: Sequence):
        cs = ptrim([u.frac(c) for c in minpoly])
        if len(cs) < 2:
            raise ValueError("extension polynomial must have positive degree")
        lc = cs[-1]
        self.u = u
        self.m = tuple(c / lc for c in cs)
        self.d = len(cs) - 1
        self.zero = KElem(self, (u.field.zero,) * self.d)
        self.one = self.from_frac(1)
        self._traces = power_sums(list(self.m), 2 * self.d, u.field.zero)

    @classmethod
    def trivial(cls, u: VarUniverse, value=0) -> "FieldTower":
        """``Q(params)`` presented as ``Q(params)[z]/<z - value>``."""
        return cls(u, [-u.frac(value), 1])

    @property
    def is_trivial(self) -> bool:
        return self.d == 1

    def from_frac(self, c) -> "KElem":
        c = self.u.frac(c)
        return KElem(self, (c,) + (self.u.field.zero,) * (self.d - 1))

    def from_list(self, cs: Sequence) -> "KElem":
        return KElem(self, tuple(self.reduce([self.u.frac(c) for c in cs])))

    @property
    def gen(self) -> "KElem":
        if self.d == 1:
            return self.from_frac(-self.m[0])
        return self.from_list([0, 1])

    def reduce(self, cs: list) -> list:
        zero = self.u.field.zero
        cs = list(cs)
        m = self.m
        for k in range(len(cs) - 1, self.d - 1, -1):
            c = cs[k]
            if c:
                for i in range(self.d):
                    cs[k - self.d + i] = cs[k - self.d + i] - c * m[i]
        cs = cs[: self.d]
        return cs + [zero] * (self.d - len(cs))

    def minpoly_str(self, var: str = "z") -> str:
        from ..ore import _is_sum
        out = ""
        for i in range(self.d, -1, -1):
            c = self.m[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = str(c.as_expr()).replace("**", "^").replace(" ", "")
            neg = cs.startswith("-") and not _is_sum(cs)
            if neg:
                cs = cs[1:]
            if _is_sum(cs):
                cs = f"({cs})"
            body = mono if (mono and cs == "1") else (f"{cs}*{mono}" if mono else cs)
            out += (" - " if neg else " + ") + body if out else ("-" if neg else "") + body
        return out

    def trace(self, e: "KElem") -> RatFunc:
        out = self.u.field.zero
        for c, tr in zip(e.c, self._traces):
            if c:
                out += c * tr
        return out


class KElem:
    """An element of ``K(t)``; ``c[i]`` is the coefficient of ``z^i``."""

    __slots__ = ("tower", "c")

    def __init__(self, tower: FieldTower, c: tuple):
        self.tower = tower
        self.c = c

    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            return other
        return self.tower.from_frac(other)

    def __add__(self, other):
        o = self._coerce(other)
        return KElem(self.tower, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return KElem(self.tower, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, KElem):
            f = self.tower.u.frac(other)
            return KElem(self.tower, tuple(a * f for a in self.c))
        tw = self.tower
        if tw.d == 1:
            return KElem(tw, (self.c[0] * other.c[0],))
        zero = tw.u.field.zero
        prod = [zero] * (2 * tw.d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] = prod[i + j] + a * b
        return KElem(tw, tuple(tw.reduce(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "KElem":
        tw = self.tower
        if not self:
            raise ZeroDivisionError("inverse of zero in K")
        if tw.d == 1:
            return KElem(tw, (1 / self.c[0],))
        zero, one = tw.u.field.zero, tw.u.field.one
        s, _, g = pgcdex(list(self.c), list(tw.m), zero, one)
        if len(g) > 1:
            raise ZeroDivisorError(g)
        return KElem(tw, tuple(tw.reduce(s + [zero] * (tw.d - len(s)))))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        out = self.tower.one
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if not isinstance(other, KElem):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def map(self, fn: Callable) -> "KElem":
        return KElem(self.tower, tuple(fn(a) for a in self.c))

    def diff_t(self) -> "KElem":
        return self.map(lambda a: diff(a, T))

    def variables(self) -> set:
        out = set()
        for a in self.c:
            out |= variables(a)
        if any(a for a in self.c[1:]):
            out.add("z")
        return out

    def as_frac(self) -> RatFunc:
        """The value when the element lies in the base field."""
        if any(self.c[1:]):
            raise ValueError("element involves the algebraic generator")
        return self.c[0]

    def t_degree(self) -> int:
        return max((degree(a.numer, T) for a in self.c if a), default=-1)

    def specialize(self, point: dict, zval) -> RatFunc:
        """Substitute parameters and ``z = zval`` (``zval`` rational)."""
        out = self.tower.u.field.zero
        for i, a in enumerate(self.c):
            if a:
                out += subs(a, point) * zval ** i
        return out

    def __repr__(self):
        return f"KElem({self})"

    def __str__(self):
        tw = self.tower
        if tw.d == 1:
            return str(self.c[0].as_expr()).replace("**", "^").replace(" ", "")
        parts = []
        for i, a in enumerate(self.c):
            if a:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                s = str(a.as_expr()).replace("**", "^").replace(" ", "")
                if not mono:
                    parts.append(s)
                else:
                    parts.append(mono if s == "1" else f"({s})*{mono}")
        return " + ".join(parts) or "0"
