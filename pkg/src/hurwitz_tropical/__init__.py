"""Exact monotone and strictly monotone double Hurwitz numbers and stationary
descendants of P^1, computed three ways: Fock-space characters, symmetric-group
enumeration, and Wick matchings grouped into tropical covers.
"""

from .exactcore import Poly, Series, bernoulli, c_coeff, format_rational
from .fock import (
    DescendantQuery,
    HurwitzQuery,
    gw_connected,
    gw_disconnected,
    gw_fock,
    hurwitz_connected,
    hurwitz_disconnected,
    hurwitz_fock,
)
from .partitions import Partition, character, contents
from .permutations import count_factorizations
from .tropical import concentration_check, covers, gw_tropical, hurwitz_tropical, wick_sum

__all__ = [
    "Poly",
    "Series",
    "bernoulli",
    "c_coeff",
    "format_rational",
    "DescendantQuery",
    "HurwitzQuery",
    "gw_connected",
    "gw_disconnected",
    "gw_fock",
    "hurwitz_connected",
    "hurwitz_disconnected",
    "hurwitz_fock",
    "Partition",
    "character",
    "contents",
    "count_factorizations",
    "concentration_check",
    "covers",
    "gw_tropical",
    "hurwitz_tropical",
    "wick_sum",
]
