from fractions import Fraction

import pytest
from helpers import PY, F, U

from ctsep.algebraic import tower as tw_mod
from ctsep.algebraic.pipeline import (
    AlgebraicInput,
    SearchExhausted,
    algebraic_action,
    associated_ode,
    basis_discriminant,
    decide_algebraic_separable,
    factor_at_point,
    find_simple_point,
    monicize,
    poly_solutions_matrix_ode,
    spec_point,
)
from ctsep.algebraic.tower import FieldTower
from ctsep.kernel import subs, universe_of
from ctsep.ore import DERIVATION
from ctsep.separability import brute_force_annihilator

WORKED = "Y^2-2*(x*t+1)*Y+(x*t+1)^2-t"

NONSPLIT = ["(t+x)*Y^2-1", "(t+x)*Y^2-t", "(t+x)*Y-1", "(t^2+x)*Y^2-1", "(t-x)*Y^2-x",
            "(t+x)*Y^3-1", "(t*x+1)*Y^2-t", "(t+x^2)*Y^2-1", "(t+x)*Y^2-t-1", "(t+2*x)*Y^2-x*t"]


def inp(text):
    return AlgebraicInput.from_poly(PY(text))


def strs(M):
    return [[str(e) for e in r] for r in M]


def test_monicize():
    P = inp(WORKED)
    assert monicize(P) is P
    m = monicize(inp("t*Y^2-1"))
    assert m.poly == PY("Y^2-t") and m.scale == PY("t")
    m = monicize(inp("x*Y^2-t"))
    assert m.poly == PY("Y^2-x*t") and m.scale == PY("x")


def test_simple_points():
    sp = find_simple_point(inp(WORKED))
    assert sp.a == 1 and str(sp.alpha) == "x" and sp.tower.d == 1
    sp = find_simple_point(inp("Y^2-(t+x)"), a_values=[1])
    assert sp.a == 1 and sp.tower.d == 2 and sp.tower.minpoly_str() == "z^2 + (-x-1)"
    # the discriminant of Y^2 - t vanishes at t = 0
    assert find_simple_point(inp("Y^2-t")).a == 1
    with pytest.raises(SearchExhausted):
        find_simple_point(inp("Y^2-t"), a_values=[0])


def test_factor_at_point():
    P = inp(WORKED)
    sp = find_simple_point(P)
    assert factor_at_point(P, sp) == [sp.tower.from_frac(U.field(c)) for c in P.coeffs]
    P = inp("(Y-t*x)*(Y-t-x)")
    sp = find_simple_point(P, a_values=[1])
    Pbar = factor_at_point(P, sp)
    assert len(Pbar) == 2 and Pbar[1] == sp.tower.one
    root = -Pbar[0].as_frac()
    assert root in (F("t*x"), F("t+x"))
    assert sp.tower.from_frac(subs(root, {"t": 1})) == sp.alpha


def test_discriminant_and_spec_point():
    P = inp(WORKED)
    sp = find_simple_point(P)
    Pbar = factor_at_point(P, sp)
    D = basis_discriminant(Pbar, sp.tower)
    assert D == F("4*t")
    c, b, qb = spec_point(Pbar, D, sp.tower)
    assert c == (0,) and b == 0
    assert qb == [F("1-t"), F("-2"), F("1")]


def test_associated_systems():
    P = inp(WORKED)
    sp = find_simple_point(P)
    A = associated_ode(factor_at_point(P, sp), sp.tower)
    assert strs(A) == [["0", "0"], ["(t*x-1)/(2*t)", "1/(2*t)"]]
    assert A[1][0].as_frac() == F("x/2 - 1/(2*t)")
    t0 = FieldTower.trivial(U)
    B = associated_ode([t0.from_frac(F(c)) for c in ("1-t", "-2", "1")], t0)
    assert [[e.as_frac() for e in r] for r in B] == [[F("0"), F("0")], [F("-1/(2*t)"), F("1/(2*t)")]]
    # degree one: logarithmic derivative of the root
    L = associated_ode([t0.from_frac(F("-t^2")), t0.one], t0)
    assert L[0][0].as_frac() == F("2/t")


def test_poly_solutions_small_systems():
    t0 = FieldTower.trivial(U)
    A = [[t0.from_frac(F("1/t"))]]
    sols = poly_solutions_matrix_ode(A, [[t0.zero]], F("1"), t0)
    assert [strs(Z) for Z in sols.basis] == [[["t"]]]
    A = [[t0.from_frac(F("t")), t0.one], [t0.zero, t0.from_frac(F("1/t"))]]
    sols = poly_solutions_matrix_ode(A, A, F("1"), t0, degree_bound=3)
    assert [[t0.one, t0.zero], [t0.zero, t0.one]] in [
        [[e * (1 / Z[0][0].as_frac()) for e in r] for r in Z] for Z in sols.basis if Z[0][0]]


def test_worked_example():
    v = decide_algebraic_separable(PY(WORKED))
    rep = v.witnesses["report"]
    assert v.separable
    assert (rep.simple_point.a, str(rep.simple_point.alpha)) == (Fraction(1), "x")
    assert rep.spec_point == ((0,), 0)
    assert rep.D == F("4*t") and rep.q == F("4*t")
    assert [strs(Z) for Z in rep.basis] == [[["t", "0"], ["t^2*x+t", "0"]], [["0", "0"], ["-t", "t"]]]
    assert {k: str(c) for k, c in rep.C.items()} == {(1, 1): "t^2"}
    assert rep.c_t_degree == 2


def test_negative_case_and_oracle():
    P = inp("Y^2-(t+x)")
    v = decide_algebraic_separable(P)
    assert not v.separable and v.witnesses["report"].degree_bound is not None
    f = universe_of(P.coeffs[0]).field
    assert brute_force_annihilator([f.zero, f.one], DERIVATION, 4, 8, action=algebraic_action(P)) is None


def test_positive_algebraic_oracle():
    P = inp("Y^2-t")
    f = U.field
    L = brute_force_annihilator([f.zero, f.one], DERIVATION, 2, 2, action=algebraic_action(P))
    assert str(L) == "2*t*D - 1"
    assert decide_algebraic_separable(P).separable


@pytest.mark.parametrize("text", NONSPLIT)
def test_nonsplit_leading_coefficient(text):
    P = inp(text)
    v = decide_algebraic_separable(P)
    assert not v.separable and not v.witnesses["report"].leading_split
    f = U.field
    if P.n == 1:
        coords = [-f(P.coeffs[0]) / f(P.coeffs[1])]
    else:
        coords = [f.zero, f.one] + [f.zero] * (P.n - 2)
    assert brute_force_annihilator(coords, DERIVATION, 3, 6, action=algebraic_action(P)) is None


def test_degree_one_delegates():
    v = decide_algebraic_separable(PY("Y - t*x"))
    assert v.separable and str(v.certificate) == "D - 1/t"
    assert not decide_algebraic_separable(PY("(t+x)*Y - 1")).separable


def test_zero_divisor_error_carries_factor():
    u = U
    tw = FieldTower(u, [F("-1"), F("0"), F("1")])  # z^2 - 1 is reducible
    e = tw.gen - 1
    with pytest.raises(tw_mod.ZeroDivisorError) as info:
        e.inverse()
    assert info.value.factor is not None
