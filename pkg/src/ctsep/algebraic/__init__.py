"""Separability of algebraic functions given by a minimal polynomial in ``Y``."""
from .pipeline import (
    AlgebraicInput,
    AlgebraicReport,
    SearchExhausted,
    UnsupportedFactorization,
    decide_algebraic_separable,
    find_simple_point,
    monicize,
    set_factorizer,
)
from .tower import FieldTower, KElem, ZeroDivisorError

__all__ = [
    "AlgebraicInput", "AlgebraicReport", "FieldTower", "KElem", "SearchExhausted",
    "UnsupportedFactorization", "ZeroDivisorError", "decide_algebraic_separable",
    "find_simple_point", "monicize", "set_factorizer",
]
