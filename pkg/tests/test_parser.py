import pytest
from helpers import F, U

from ctsep.cli.parser import (
    ParseError,
    format_ratfunc,
    parse_ast,
    parse_expression,
    parse_operator,
    parse_params,
)
from ctsep.corpus import load_corpus
from ctsep.kernel import get_universe
from ctsep.ore import DERIVATION, SHIFT, TFIELD, OrePoly

t = TFIELD.gens[0]


def test_examples():
    f = parse_expression("1/(t+x)")
    assert f.denom == U.poly(F("t+x")) and f.numer == 1
    g = parse_expression("(t^2+1)*(x+2)")
    assert g.denom == 1 and g.numer == (U.gen("t") ** 2 + 1) * (U.gen("x") + 2)


def test_precedence_and_unary_minus():
    assert parse_expression("-t^2") == -parse_expression("t*t")
    assert parse_expression("2^-1*t") == parse_expression("t/2")
    assert parse_expression("1-2-3") == parse_expression("-4")
    assert parse_expression("12/4/3") == parse_expression("1")
    assert parse_expression("(t+x)^-2") == parse_expression("1/((t+x)*(t+x))")
    assert parse_expression("--t") == parse_expression("t")


def test_ast_shape():
    node = parse_ast("t+2*x^3")
    assert node.kind == "add"
    assert [a.kind for a in node.args] == ["var", "mul"]


@pytest.mark.parametrize("text, col", [("t+", 3), ("(t+x", 5), ("t**2", 3), ("t^x", 3),
                                       ("2 $ 3", 3), ("", 1), ("t)", 2)])
def test_syntax_errors(text, col):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.line == 1 and info.value.col == col


def test_error_message_and_lines():
    with pytest.raises(ParseError) as info:
        parse_expression("t+")
    assert "line 1, column 3" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_expression("t+\n+")
    assert (info.value.line, info.value.col) == (2, 1)


def test_semantic_errors():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_expression("t+y")
    with pytest.raises(ParseError, match="unknown variable"):
        parse_expression("Y+t")
    with pytest.raises(ParseError):
        parse_expression("1/(t-t)")
    with pytest.raises(ParseError):
        parse_expression("0^-1")


def test_params():
    assert parse_params(None) == ("x",)
    assert parse_params("x, y") == ("x", "y")
    assert parse_params(["a"]) == ("a",)
    f = parse_expression("x*y+t", ("x", "y"))
    assert f.field is get_universe(("x", "y")).field
    with pytest.raises(ValueError):
        parse_params("t")


def test_algebraic_y():
    p = parse_expression("Y^2-t", allow_y=True)
    assert p.numer == U.gen("Y") ** 2 - U.gen("t")


def test_operators():
    assert parse_operator("(t+1)*S - t") == OrePoly(SHIFT, (-t, t + 1))
    assert parse_operator("t*D + 1") == OrePoly(DERIVATION, (1, t))
    assert parse_operator("1/t*D^2") == OrePoly(DERIVATION, (0, 0, 1 / t))
    assert parse_operator("(D+1)*(D-1)") == OrePoly(DERIVATION, (-1, 0, 1))
    assert parse_operator("3", SHIFT) == OrePoly(SHIFT, (3,))
    for bad in ("D*S", "x*D", "D/(D+1)", "D^-1", "D^2/t"):
        with pytest.raises(ParseError):
            parse_operator(bad)
    with pytest.raises(ParseError):
        parse_operator("S", DERIVATION)


def test_round_trip_corpus():
    params, items = load_corpus()
    for it in items:
        f = parse_expression(it.a, params)
        assert parse_expression(format_ratfunc(f), params) == f
        r = parse_expression(it.closed_form["rational"], params)
        assert parse_expression(format_ratfunc(r), params) == r


def test_round_trip_spec_inputs():
    for text in ("t*(t+1)*(t-5)*(t^2+1)*(t^2+4*t+5)", "1/(t*x*(x+1))", "x/(t^2*(x^2+1))",
                 "(1/2)/(t+x)", "-3*t^2/(x-1)^3", "1/(x^2+t)"):
        f = parse_expression(text)
        assert parse_expression(format_ratfunc(f)) == f
