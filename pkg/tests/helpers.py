"""Shared constructors and random generators for the test suite."""
from __future__ import annotations

import random

from ctsep.cli.parser import parse_expression
from ctsep.kernel import get_universe

U = get_universe(("x",))


def F(text: str, params=("x",)):
    """Rational function from text."""
    return parse_expression(text, params)


def P(text: str, params=("x",)):
    """Polynomial from text."""
    return get_universe(tuple(params)).poly(parse_expression(text, params))


def PY(text: str, params=("x",)):
    """Polynomial in ``Y`` (and ``t``, params) from text."""
    return get_universe(tuple(params)).poly(parse_expression(text, params, allow_y=True))


def rand_poly_t(rng: random.Random, deg: int, lo: int = -3, hi: int = 3):
    t = U.t
    out = U.field.zero
    for k in range(deg + 1):
        out += rng.randint(lo, hi) * t**k
    return out


def rand_poly_tx(rng: random.Random, deg_t: int, deg_x: int, lo: int = -3, hi: int = 3):
    t, x = U.t, U.fgen("x")
    out = U.field.zero
    for i in range(deg_t + 1):
        for j in range(deg_x + 1):
            if rng.random() < 0.6:
                out += rng.randint(lo, hi) * t**i * x**j
    return out


def rand_linear_t(rng: random.Random, with_x: bool = True):
    """``t + c`` with ``c`` an integer or ``x`` plus an integer."""
    c = rng.randint(-4, 4)
    return U.t + c + (U.fgen("x") if with_x and rng.random() < 0.5 else 0)


# --- generators for the randomized suites -------------------------------------------------

# irreducible over Q(x)[t]; each involves x, so no shift of them divides a polynomial in t alone
IRREDUCIBLE = ("t+x", "t+x+2", "t-2*x", "t^2+x", "t^2+x*t+1", "t^2-x")


def rand_nonzero(rng, make):
    while True:
        v = make()
        if v:
            return v


def rand_unit_at(rng, p, var: str = "t"):
    """Random nonzero rational function whose numerator and denominator are coprime to ``p``."""
    from ctsep.kernel import mp_gcd
    while True:
        a = rand_poly_tx(rng, 2, 1)
        b = rand_poly_tx(rng, 2, 1)
        if not a or not b:
            continue
        if mp_gcd(a.numer, p).is_ground and mp_gcd(b.numer, p).is_ground:
            return a / b


def valuation_case(rng):
    """``(f, g, p, m, n)`` with ``f = p^m * unit`` and ``g = p^n * unit``."""
    p = P(rng.choice(IRREDUCIBLE))
    m, n = rng.randint(-3, 3), rng.randint(-3, 3)
    pf = U.field(p)
    f = pf**m * rand_unit_at(rng, p)
    g = pf**n * rand_unit_at(rng, p)
    return f, g, p, m, n


def lemma_case(rng):
    """``(f, L, p)`` meeting the hypotheses of the dispersion lemma for shift operators."""
    from ctsep.kernel import mp_gcd, shift
    from ctsep.ore import SHIFT, TFIELD, OrePoly
    p = P(rng.choice(IRREDUCIBLE))
    shifts = sorted(set([0] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 2))]))
    b = U.ring.one
    for s in shifts:
        b *= shift(p, "t", s) ** rng.randint(1, 2)
    if rng.random() < 0.5:
        b *= P(rng.choice(("t", "t^2+1", "t-3")))
    while True:
        a = rand_poly_tx(rng, 2, 1).numer
        if a and mp_gcd(a, b).is_ground:
            break
    rho = rng.randint(1, 3)
    tt = TFIELD.gens[0]
    coeffs = []
    for i in range(rho + 1):
        c = TFIELD.zero
        while True:
            c = sum((rng.randint(-3, 3) * tt**k for k in range(rng.randint(0, 2) + 1)), TFIELD.zero)
            if c or 0 < i < rho:
                break
        coeffs.append(c)
    return U.field(a) / U.field(b), OrePoly(SHIFT, tuple(coeffs)), p, rho


def reduction_input(rng, max_deg: int = 4):
    """Random rational function with repeated and shifted factors, degrees <= ``max_deg``."""
    from ctsep.kernel import degree, shift
    var = rng.choice(("t", "x"))
    den = U.ring.one
    for _ in range(rng.randint(1, 3)):
        fac = P(rng.choice(IRREDUCIBLE + ("t", "x", "x+1", "t-1", "x^2+1")))
        if rng.random() < 0.4:
            fac = shift(fac, var, rng.randint(-2, 2))
        cand = den * fac ** rng.randint(1, 3)
        if max(degree(cand, "t"), degree(cand, "x")) <= max_deg:
            den = cand
    num = rand_nonzero(rng, lambda: rand_poly_tx(rng, 2, 2))
    return num / U.field(den), var


def split_rational(rng):
    """Split denominator, numerator of degree at most 2 in ``t`` and in ``x``."""
    dt = rand_nonzero(rng, lambda: rand_poly_t(rng, rng.randint(1, 2)))
    dx = rand_nonzero(rng, lambda: rand_poly_tx(rng, 0, rng.randint(0, 2)))
    num = rand_nonzero(rng, lambda: rand_poly_tx(rng, 2, 2))
    return num / (dt * dx)


def nonsplit_rational(rng):
    """Denominator ``t + g(x)`` with ``g`` nonconstant, possibly times a factor in ``t``."""
    x = U.fgen("x")
    while True:
        g = sum((rng.randint(-3, 3) * x**k for k in range(3)), U.field.zero)
        if g.numer.degree(U.index("x")) >= 1:
            break
    den = U.t + g
    if rng.random() < 0.5:
        den *= rand_nonzero(rng, lambda: rand_poly_t(rng, 1))
    while True:
        f = rand_nonzero(rng, lambda: rand_poly_tx(rng, 2, 2)) / den
        if f.denom.degree(U.index("x")) >= 1:
            return f
