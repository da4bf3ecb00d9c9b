"""Exact computation with finite Weyl groups: Bruhat order and graphs,
R-, Rtilde- and Kazhdan-Lusztig polynomials, rational smoothness, and a
suite of named whole-group verification checks.

Quick start:

    >>> from bruhatkl import build_group, parse_group_spec
    >>> from bruhatkl.klr import kl_poly
    >>> from bruhatkl.coxeter import parse_element
    >>> ctx = build_group(parse_group_spec("A3"))
    >>> str(kl_poly(ctx.identity, parse_element(ctx, "2 1 3 2")))
    'q + 1'
"""

from bruhatkl.coxeter import (
    CoxeterDatum,
    GroupContext,
    GroupElement,
    build_group,
    parse_element,
    parse_group_spec,
    word_of,
)
from bruhatkl.polynomial import Basis, IntPoly

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "IntPoly",
    "CoxeterDatum",
    "GroupContext",
    "GroupElement",
    "build_group",
    "parse_element",
    "parse_group_spec",
    "word_of",
    "__version__",
]
