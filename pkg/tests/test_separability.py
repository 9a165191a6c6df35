import random

import pytest
from helpers import F, P, U, rand_linear_t

from ctsep.kernel import RESIDUE_VAR, T, degree, mp_gcd, shift, subs, variables
from ctsep.ore import DERIVATION, SHIFT, TFIELD, OrePoly, format_operator, ore_apply, ore_lclm
from ctsep.reductions import abramov_reduce
from ctsep.separability import (
    DegenerateInput,
    brute_force_annihilator,
    diff_split_form,
    gp_form,
    hyperexp_separable,
    hypergeom_separable,
    is_split,
    rational_separable,
    split_part,
    telescoper_exists_dt_sx,
    telescoper_exists_st_dx,
)
from ctsep.valdis import integer_shifts

t = TFIELD.gens[0]
D = OrePoly.gen(DERIVATION)
S = OrePoly.gen(SHIFT)
TX = [["t"], ["x"]]


def test_is_split():
    assert is_split(P("(t^2+1)*(x^2+x+1)"), TX)
    assert not is_split(P("t+x"), TX)
    assert is_split(P("5"), TX)
    with pytest.raises(ValueError):
        is_split(P("0"), TX)


def test_split_part():
    assert split_part(P("t*(t+x)")) == (P("t"), P("t+x"))
    assert split_part(P("t^2+1")) == (P("t^2+1"), P("1"))
    assert split_part(P("t+x")) == (P("1"), P("t+x"))
    s, n = split_part(P("(t-3)^2*(t^2+x)*(t+x)"))
    assert s == P("(t-3)^2") and n == P("(t^2+x)*(t+x)")


def test_rational_examples():
    v = rational_separable(F("1/(t+x)"), DERIVATION)
    assert not v.separable and v.certificate is None
    v = rational_separable(F("1/(t*x)"), SHIFT)
    assert v.separable and v.certificate == S - t / (t + 1)
    v = rational_separable(F("(t+x)/(t*x)"), DERIVATION)
    assert v.separable
    assert v.certificate == ore_lclm([D, t * D + 1])
    assert not ore_apply(v.certificate, F("(t+x)/(t*x)"))


def test_rational_zero_and_bad_kind():
    assert rational_separable(F("0"), SHIFT).separable
    with pytest.raises(ValueError):
        rational_separable(F("1/t"), "q-shift")


def test_gp_form_examples():
    g = gp_form(F("(t+x+1)/(t+x)"))
    assert (g.z, g.p, g.q, g.rhat) == (F("1"), F("t+x"), F("1"), F("1"))
    g = gp_form(F("t+1"))
    assert (g.z, g.p, g.q, g.rhat) == (F("1"), F("1"), F("t+1"), F("1"))
    g = gp_form(F("2*x"))
    assert (g.z, g.p, g.q, g.rhat) == (F("2*x"), F("1"), F("1"), F("1"))
    with pytest.raises(DegenerateInput):
        gp_form(F("0"))


def _gp_conditions(g):
    q, r, p = g.q.numer, g.rhat.numer, g.p.numer
    assert not [k for k in integer_shifts(q, r, T) if k >= 0]
    assert degree(mp_gcd(q, p), T) <= 0
    assert degree(mp_gcd(r, shift(p, T, 1)), T) <= 0
    for h in (g.p, g.q, g.rhat):
        assert h.denom == 1 and h.numer.LC == 1 or degree(h.numer, T) <= 0


@pytest.mark.parametrize("seed", range(100))
def test_gp_form_round_trip(seed):
    rng = random.Random(seed)
    num = U.field.one
    den = U.field.one
    for _ in range(rng.randint(1, 4)):
        num *= rand_linear_t(rng)
    for _ in range(rng.randint(0, 4)):
        den *= rand_linear_t(rng)
    a = rng.choice([1, 2, -3]) * num / den
    g = gp_form(a)
    assert g.recombine() == a
    _gp_conditions(g)


def test_hypergeom_examples():
    assert hypergeom_separable(F("(t+x+1)/(t+x)")).separable
    assert not hypergeom_separable(F("t+x+1")).separable
    assert hypergeom_separable(F("t+1")).separable
    with pytest.raises(DegenerateInput):
        hypergeom_separable(F("0"))


def test_diff_split_form_examples():
    f = diff_split_form(F("5/(t+x)+2"))
    assert not f.g and f.polypart == F("2") and not f.split_simple
    assert f.nonsplit_num / U.field(f.nonsplit_den) == F("5/(t+x)")
    res = f.residue_resultant
    assert variables(res) == {RESIDUE_VAR}
    f = diff_split_form(F("x/(t-1)^2"))
    assert f.g == F("-x/(t-1)") and not f.polypart and not f.split_simple and not f.nonsplit_num
    f = diff_split_form(F("1/t"))
    assert not f.g and f.split_simple == F("1/t") and not f.nonsplit_num


def test_residue_resultant_root():
    res = diff_split_form(F("5/(t+x)+2")).residue_resultant
    assert degree(res.numer, RESIDUE_VAR) == 1
    assert not subs(res, {RESIDUE_VAR: 5}) and subs(res, {RESIDUE_VAR: 4})


@pytest.mark.parametrize("seed", range(20))
def test_diff_split_reconstruction(seed):
    rng = random.Random(seed)
    a = U.field.zero
    for _ in range(rng.randint(1, 3)):
        a += rng.randint(-3, 3) / rand_linear_t(rng) ** rng.randint(1, 2)
    a += rng.randint(-2, 2) * U.t
    if a:
        assert diff_split_form(a).recombine() == a


def test_hyperexp_examples():
    assert hyperexp_separable(F("5/(t+x)+2")).separable
    assert not hyperexp_separable(F("(1/2)/(t+x)")).separable
    assert not hyperexp_separable(F("x")).separable
    with pytest.raises(DegenerateInput):
        hyperexp_separable(F("0"))


def test_telescoper_st_dx():
    v = telescoper_exists_st_dx(F("1/(t+x)^2"))
    assert v.separable and v.certificate == OrePoly.one(SHIFT)
    assert v.witnesses["reduction"].g == F("-1/(t+x)")
    assert not telescoper_exists_st_dx(F("1/(x^2+t)")).separable
    v = telescoper_exists_st_dx(F("x/(t^2*(x^2+1))"))
    assert v.separable and not ore_apply(v.certificate, v.witnesses["reduction"].remainder)


def test_telescoper_dt_sx():
    v = telescoper_exists_dt_sx(F("1/(t*x*(x+1))"))
    assert v.separable and v.certificate == OrePoly.one(DERIVATION)
    assert v.witnesses["reduction"].g == F("-1/(t*x)")
    assert not telescoper_exists_dt_sx(F("1/(x^2+t)")).separable
    v = telescoper_exists_dt_sx(F("1/(t*(x^2+1))"))
    assert v.separable and format_operator(v.certificate) == "t*D + 1"


def test_telescoper_rejects_two_params():
    f = F("1/(t+x+y)", ("x", "y"))
    with pytest.raises(ValueError):
        telescoper_exists_dt_sx(f)


def test_oracle_examples():
    assert brute_force_annihilator([F("1/t")], DERIVATION, 1, 2) == t * D + 1
    assert brute_force_annihilator([F("1/(t+x)")], DERIVATION, 3, 6) is None
    assert brute_force_annihilator([F("1/(t*x)")], SHIFT, 1, 2) == (t + 1) * S - t


def test_oracle_agrees_with_reduction_remainder():
    f = F("1/(t*(x^2+1)) + 1/(x*(x+1))")
    rem = abramov_reduce(f, "x").remainder
    L = brute_force_annihilator([rem], DERIVATION, 2, 3)
    assert L is not None and not ore_apply(L, rem)
