"""Recursive-descent parser for rational expressions and operators.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' ['-'] integer)?
    base   := integer | ident | '(' expr ')' | '-' factor

``t`` is the distinguished variable, parameters are declared by the caller,
``Y`` is reserved for algebraic inputs and ``D`` / ``S`` for operators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..kernel import T, Y, RatFunc, get_universe
from ..ore import DERIVATION, SHIFT, OrePoly, tcoeff


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'op', 'end'
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class Node:
    kind: str  # int, var, add, sub, mul, div, pow, neg
    args: tuple
    line: int
    col: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))", re.S)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        ws = re.match(r"\s*", text[pos:]).group(0)
        for i, ch in enumerate(ws):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos += len(ws)
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        num, ident, op = m.groups()
        start = m.start(1) if num else m.start(2) if ident else m.start(3)
        col = start - line_start + 1
        if num:
            tokens.append(Token("int", num, line, col))
        elif ident:
            tokens.append(Token("ident", ident, line, col))
        elif op in "+-*/^()":
            tokens.append(Token("op", op, line, col))
        else:
            raise ParseError(f"unexpected character {op!r}", line, col)
        pos = m.end()
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _fail(self, what: str):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {what}, found {found}", tok.line, tok.col)

    def _accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self._fail("operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            tok = self.tok
            self.i += 1
            node = Node("add" if tok.text == "+" else "sub", (node, self.term()), tok.line, tok.col)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            tok = self.tok
            self.i += 1
            node = Node("mul" if tok.text == "*" else "div", (node, self.factor()), tok.line, tok.col)
        return node

    def factor(self) -> Node:
        node = self.base()
        tok = self.tok
        if self._accept("^"):
            sign = -1 if self._accept("-") else 1
            if self.tok.kind != "int":
                self._fail("integer exponent")
            node = Node("pow", (node, sign * int(self.tok.text)), tok.line, tok.col)
            self.i += 1
        return node

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Node("int", (int(tok.text),), tok.line, tok.col)
        if tok.kind == "ident":
            self.i += 1
            return Node("var", (tok.text,), tok.line, tok.col)
        if self._accept("("):
            node = self.expr()
            if not self._accept(")"):
                self._fail("')'")
            return node
        if self._accept("-"):
            return Node("neg", (self.factor(),), tok.line, tok.col)
        self._fail("a number, variable or '('")


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def _idents(node: Node, out: set) -> set:
    if node.kind == "var":
        out.add(node.args[0])
    for a in node.args:
        if isinstance(a, Node):
            _idents(a, out)
    return out


def _lower(node: Node, leaf, zero_test):
    k = node.kind
    if k in ("int", "var"):
        return leaf(node)
    if k == "neg":
        return -_lower(node.args[0], leaf, zero_test)
    if k == "pow":
        b = _lower(node.args[0], leaf, zero_test)
        n = node.args[1]
        if n < 0:
            if zero_test(b):
                raise ParseError("zero denominator", node.line, node.col)
            return (1 / b) ** (-n) if not isinstance(b, OrePoly) else _op_inverse(b, node) ** (-n)
        return b**n
    a = _lower(node.args[0], leaf, zero_test)
    b = _lower(node.args[1], leaf, zero_test)
    if k == "add":
        return a + b
    if k == "sub":
        return a - b
    if k == "mul":
        return a * b
    if zero_test(b):
        raise ParseError("zero denominator", node.line, node.col)
    if isinstance(a, OrePoly) or isinstance(b, OrePoly):
        return _op_div(a, b, node)
    return a / b


def _op_inverse(b: OrePoly, node: Node) -> OrePoly:
    if b.order > 0:
        raise ParseError("only scalars can be inverted in an operator", node.line, node.col)
    return OrePoly.scalar(b.kind, 1 / b.coeffs[0])


def _op_div(a: OrePoly, b: OrePoly, node: Node) -> OrePoly:
    if a.order > 0 or b.order > 0:
        raise ParseError("division is only allowed between scalars", node.line, node.col)
    return OrePoly.scalar(a.kind, a.coeffs[0] / b.coeffs[0])


def parse_params(spec: str | Sequence[str] | None) -> tuple[str, ...]:
    """Parameter names from ``"x,y"`` or a list; validated by building the universe."""
    if spec is None:
        return ("x",)
    if isinstance(spec, str):
        spec = [p.strip() for p in spec.split(",") if p.strip()]
    params = tuple(spec)
    get_universe(params)
    return params


def parse_expression(text: str, params: Sequence[str] = ("x",), allow_y: bool = False) -> RatFunc:
    """Parse ``text`` into a normalized rational function of ``t`` and ``params``."""
    u = get_universe(tuple(params))
    ast = parse_ast(text)
    allowed = {T, *u.params} | ({Y} if allow_y else set())

    def leaf(node: Node):
        if node.kind == "int":
            return u.frac(node.args[0])
        name = node.args[0]
        if name not in allowed:
            raise ParseError(f"unknown variable {name!r}", node.line, node.col)
        return u.fgen(name)

    return _lower(ast, leaf, lambda v: not v)


def parse_operator(text: str, kind: str | None = None) -> OrePoly:
    """Parse an operator in ``D`` or ``S`` with coefficients in ``Q(t)``."""
    ast = parse_ast(text)
    names = _idents(ast, set())
    gens = names & {"D", "S"}
    if len(gens) == 2:
        raise ParseError("operator mixes D and S", ast.line, ast.col)
    inferred = DERIVATION if "D" in gens else SHIFT if "S" in gens else None
    if kind and inferred and kind != inferred:
        raise ParseError(f"operator uses {'D' if inferred == DERIVATION else 'S'} but kind is {kind}",
                         ast.line, ast.col)
    kind = inferred or kind or DERIVATION
    u = get_universe(())

    def leaf(node: Node):
        if node.kind == "int":
            return OrePoly.scalar(kind, node.args[0])
        name = node.args[0]
        if name in ("D", "S"):
            return OrePoly.gen(kind)
        if name == T:
            return OrePoly.scalar(kind, tcoeff(u.t))
        raise ParseError(f"operator coefficients must lie in Q(t), found {name!r}", node.line, node.col)

    return _lower(ast, leaf, lambda v: not v)


def format_ratfunc(f) -> str:
    """Text that parses back to ``f``."""
    return str(f.as_expr()).replace("**", "^").replace(" ", "")
