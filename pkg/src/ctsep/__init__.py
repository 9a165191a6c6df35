"""Exact deciders for separability in a distinguished variable ``t``.

A function of ``t`` and parameters is separable when a nonzero linear
differential (or shift) operator in ``t`` alone, with coefficients in
``Q(t)``, annihilates it.  The package decides this for rational,
hyperexponential, hypergeometric and algebraic functions, and decides
telescoper existence for bivariate rational functions.
"""
__version__ = "0.1.0"

from .kernel import get_universe  # noqa: E402
from .ore import DERIVATION, SHIFT, OrePoly, format_operator, ore_apply, ore_gcrd, ore_lclm, primitive  # noqa: E402
from .reductions import abramov_reduce, hermite_reduce  # noqa: E402
from .separability import (  # noqa: E402
    DegenerateInput,
    Verdict,
    brute_force_annihilator,
    diff_split_form,
    gp_form,
    hyperexp_separable,
    hypergeom_separable,
    rational_separable,
    telescoper_exists_dt_sx,
    telescoper_exists_st_dx,
)
from .valdis import dispersion, local_dispersion, order_at  # noqa: E402

__all__ = [
    "DERIVATION", "SHIFT", "DegenerateInput", "OrePoly", "Verdict", "abramov_reduce",
    "brute_force_annihilator", "diff_split_form", "dispersion", "format_operator", "get_universe",
    "gp_form", "hermite_reduce", "hyperexp_separable", "hypergeom_separable", "local_dispersion",
    "order_at", "ore_apply", "ore_gcrd", "ore_lclm", "primitive", "rational_separable",
    "telescoper_exists_dt_sx", "telescoper_exists_st_dx",
]
