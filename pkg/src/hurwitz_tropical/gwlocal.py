"""Local Gromov-Witten weights: one-point relative invariants of P^1,
degree-zero one-point correlators, and the vertex multiplicity of a tropical cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .exactcore import S_series, Series, c_coeff
from .partitions import Partition, aut_order

__all__ = ["LocalVertexData", "one_point_gw", "one_point_series", "hodge_factor", "vertex_multiplicity"]


@dataclass(frozen=True)
class LocalVertexData:
    x_plus: Partition
    x_minus: Partition
    g1: int = 0
    g2: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x_plus", Partition(self.x_plus))
        object.__setattr__(self, "x_minus", Partition(self.x_minus))
        if self.g1 < 0 or self.g2 < 0:
            raise ValueError("genus decorations must be >= 0")

    @property
    def valence(self) -> int:
        return len(self.x_plus) + len(self.x_minus)

    @property
    def lambda_part(self) -> int:
        return self.valence + 2 * (self.g1 + self.g2) - 2


@lru_cache(maxsize=None)
def one_point_series(x_plus: tuple[int, ...], x_minus: tuple[int, ...], order: int) -> Series:
    """prod_i S(x_i z) / S(z) over all parts of both profiles, to z^order."""
    base = S_series(order)
    s = Series([1], order)
    for x in x_plus + x_minus:
        s = s.mul(base.scale_argument(x))
    return s.mul(base.inverse())


@lru_cache(maxsize=None)
def _one_point(x_plus: tuple[int, ...], x_minus: tuple[int, ...], g: int) -> Fraction:
    coeff = one_point_series(x_plus, x_minus, 2 * g)[2 * g]
    return coeff / (aut_order(x_plus) * aut_order(x_minus))


def one_point_gw(x_plus: Sequence[int], x_minus: Sequence[int], g: int) -> Fraction:
    """<x+, tau_{2g-2+l(x+)+l(x-)}(pt), x->_g, connected, relative to 0 and infinity.

    With both profiles empty this is the degree-zero correlator c_{2g-1}.
    """
    xp, xm = Partition(x_plus), Partition(x_minus)
    if xp.size != xm.size:
        raise ValueError(f"profile sizes differ: {xp.size} != {xm.size}")
    if g < 0:
        raise ValueError("genus must be >= 0")
    return _one_point(tuple(xp), tuple(xm), g)


def hodge_factor(g2: int) -> Fraction:
    """<tau_{2g-2}(pt)>_g in degree zero: 1 for g = 0, else c_{2g-1}."""
    if g2 < 0:
        raise ValueError("genus must be >= 0")
    return c_coeff(2 * g2 - 1)


def vertex_multiplicity(v: LocalVertexData) -> Fraction:
    """(lambda_v - 1)! |Aut x+| |Aut x-| <tau_{2 g2 - 2}>_{g2} <x+, tau, x->_{g1}."""
    lam = v.lambda_part
    if lam < 1:
        raise ValueError(f"vertex has lambda part {lam} < 1")
    return (
        factorial(lam - 1)
        * aut_order(v.x_plus)
        * aut_order(v.x_minus)
        * hodge_factor(v.g2)
        * one_point_gw(v.x_plus, v.x_minus, v.g1)
    )
