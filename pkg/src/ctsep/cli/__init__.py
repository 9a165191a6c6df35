"""Parser and command-line front end."""
from .parser import ParseError, format_ratfunc, parse_expression, parse_operator

__all__ = ["ParseError", "format_ratfunc", "parse_expression", "parse_operator"]
