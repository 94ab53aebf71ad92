"""Exact computer algebra for multiple zeta values over F_q[theta]."""

from .fields import (
    GF,
    LaurentSeries,
    Poly,
    RationalFunc,
    carlitz_l,
    laurent_expand,
    parse_poly,
    parse_ratfunc,
    theta_bracket,
)

__all__ = [
    "GF",
    "Poly",
    "RationalFunc",
    "LaurentSeries",
    "laurent_expand",
    "carlitz_l",
    "theta_bracket",
    "parse_poly",
    "parse_ratfunc",
]

__version__ = "0.1.0"
