"""Partitions, Young-diagram contents, symmetric functions of contents,
symmetric-group characters and the enumeration helpers used throughout.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")

__all__ = [
    "Partition",
    "contents",
    "power_sum",
    "complete_homogeneous",
    "elementary_symmetric",
    "character",
    "aut_order",
    "z_order",
    "partitions",
    "partitions_max_length",
    "set_partitions",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Parts may be given in any order; they are sorted on construction.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        ps = [int(p) for p in parts]
        for p in ps:
            if p <= 0:
                raise ValueError(f"partition parts must be positive, got {p}")
        return super().__new__(cls, sorted(ps, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def to_json(self) -> list[int]:
        return list(self)


def contents(lam: Sequence[int]) -> list[int]:
    """Contents j - i of the boxes (i, j) of the Young diagram, row by row."""
    return [j - i for i, row in enumerate(lam, start=1) for j in range(1, row + 1)]


def power_sum(k: int, xs: Iterable[int | Fraction]) -> Fraction:
    """p_k(X) = sum of x^k; p_0 is the cardinality."""
    return sum((Fraction(x) ** k for x in xs), Fraction(0))


def _newton(m: int, xs: Sequence[int | Fraction], signed: bool) -> Fraction:
    if m < 0:
        return Fraction(0)
    ps = {k: power_sum(k, xs) for k in range(1, m + 1)}
    total = Fraction(0)
    for lam in partitions(m):
        term = Fraction(prod((ps[part] for part in lam), start=Fraction(1)), z_order(lam))
        if signed and (m - len(lam)) % 2:
            term = -term
        total += term
    return total


def complete_homogeneous(m: int, xs: Sequence[int | Fraction]) -> Fraction:
    """h_m(X) from power sums: sum over lambda |- m of prod p_{lambda_i} / z_lambda."""
    return _newton(m, list(xs), signed=False)


def elementary_symmetric(m: int, xs: Sequence[int | Fraction]) -> Fraction:
    """sigma_m(X) from power sums, with sign (-1)^{m - len(lambda)}."""
    xs = list(xs)
    if m > len(xs):
        return Fraction(0)
    return _newton(m, xs, signed=True)


def aut_order(mu: Iterable[int]) -> int:
    """prod_i m_i(mu)!, the number of permutations of equal parts."""
    return prod(factorial(c) for c in Counter(mu).values())


def z_order(mu: Iterable[int]) -> int:
    """z_mu = prod_i i^{m_i} m_i!, the centralizer order of cycle type mu."""
    return prod(i**c * factorial(c) for i, c in Counter(mu).items())


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beta)
    total = 0
    for idx, b in enumerate(beta):
        if b - r < 0 or (b - r) in occupied:
            continue
        sign = -1 if sum(1 for c in beta if b - r < c < b) % 2 else 1
        new_beta = sorted((beta[:idx] + [b - r] + beta[idx + 1 :]), reverse=True)
        new_lam = tuple(x - (n - 1 - i) for i, x in enumerate(new_beta))
        new_lam = tuple(p for p in new_lam if p > 0)
        total += sign * _mn(new_lam, rest)
    return total


def character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi^lambda evaluated on cycle type mu, by the Murnaghan-Nakayama rule."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{list(lam)}| != |{list(mu)}|")
    return _mn(tuple(lam), tuple(mu))


def partitions(n: int) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order: (n), (n-1, 1), ..., (1^n)."""
    return partitions_max_length(n, n if n > 0 else 0)


def partitions_max_length(n: int, k: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n with at most k parts, reverse lexicographic order."""
    if n < 0:
        return
    if max_part is None:
        max_part = n

    def rec(rem: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rem, cap), 0, -1):
            if first * slots < rem:
                break
            for tail in rec(rem - first, slots - 1, first):
                yield (first,) + tail

    for parts in rec(n, k, max_part):
        yield Partition(parts)


def set_partitions(items: Sequence[T]) -> Iterator[list[list[T]]]:
    """All set partitions of ``items`` (by position), in restricted-growth-string order."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return

    def rec(i: int, blocks: list[list[T]]) -> Iterator[list[list[T]]]:
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(items[i])
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([items[i]])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])
