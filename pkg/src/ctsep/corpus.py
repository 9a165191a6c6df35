"""The curated hyperexponential / hypergeometric certificate corpus.

Each item pairs a certificate ``a`` with a closed form ``H`` so that the
deciders can be cross-checked against the brute-force oracle.  A closed form
is split as ``H = R * B`` where ``R`` is rational and ``B`` is the
non-rational part (an exponential and real powers, or a geometric factor and
Gamma functions).  The oracle then searches annihilators of the single
coordinate ``R`` under the action of ``D`` or ``S`` twisted by ``B``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .cli.parser import parse_expression
from .kernel import T, RatFunc, diff, shift, universe_of, variables
from .ore import DERIVATION, SHIFT, OrePoly
from .separability import brute_force_annihilator, hyperexp_action, hypergeom_action


@dataclass(frozen=True)
class CorpusItem:
    id: str
    type: str  # "hyperexp" or "hypergeom"
    a: str
    expected: bool
    closed_form: dict
    oracle: tuple

    @property
    def kind(self) -> str:
        return DERIVATION if self.type == "hyperexp" else SHIFT


def load_corpus() -> tuple[tuple[str, ...], list[CorpusItem]]:
    raw = json.loads(resources.files("ctsep").joinpath("data/corpus.json").read_text())
    params = tuple(raw["vars"])
    items = [CorpusItem(d["id"], d["type"], d["a"], d["expected"], d["closed_form"],
                        tuple(d["oracle"])) for d in raw["items"]]
    return params, items


def twist(item: CorpusItem, params) -> RatFunc:
    """Certificate of the non-rational part ``B`` of the closed form."""
    cf = item.closed_form
    p = lambda s: parse_expression(str(s), params)  # noqa: E731
    if item.type == "hyperexp":
        out = diff(p(cf["exp"]), T)
        for base, e in cf["powers"]:
            b = p(base)
            out += p(e) * diff(b, T) / b
        return out
    out = p(cf["base"])
    for lin, e in cf["gammas"]:
        g = p(lin)
        if T in variables(g - universe_of(g).t):
            raise ValueError(f"Gamma argument {lin!r} is not t plus a constant")
        out *= g ** int(e)
    return out


def closed_form_certificate(item: CorpusItem, params) -> RatFunc:
    """``D(H)/H`` or ``S(H)/H`` recomputed from the closed form."""
    R = parse_expression(item.closed_form["rational"], params)
    b = twist(item, params)
    if item.type == "hyperexp":
        return diff(R, T) / R + b
    return shift(R, T, 1) / R * b


def oracle_annihilator(item: CorpusItem, params) -> Optional[OrePoly]:
    R = parse_expression(item.closed_form["rational"], params)
    b = twist(item, params)
    action = hyperexp_action(b) if item.type == "hyperexp" else hypergeom_action(b)
    order, deg = item.oracle
    return brute_force_annihilator([R], item.kind, order, deg, action=action)
