"""Brute-force monotone and strictly monotone double Hurwitz numbers.

Counts tuples (sigma, tau_1, ..., tau_m) in S_d with sigma of cycle type mu,
tau_t = (a_t b_t) transpositions with a_t < b_t, the larger elements b_t weakly
(monotone) or strictly (strict) increasing, and tau_m ... tau_1 sigma of cycle
type nu. Permutations are 0-based tuples ``p`` with ``p[i]`` the image of ``i``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

from .partitions import Partition, aut_order

__all__ = ["FactorizationCount", "cycle_type", "is_transitive", "count_factorizations"]


@dataclass(frozen=True)
class FactorizationCount:
    """``raw`` tuples; ``labeled`` = raw * |Aut mu| |Aut nu| (ends labeled);
    ``normalized`` = labeled / d!."""

    raw: int
    labeled: int
    degree: int

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.labeled, factorial(self.degree))


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            n += 1
        lengths.append(n)
    return Partition(lengths)


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def is_transitive(generators: Iterable[Sequence[int]], d: int) -> bool:
    """Whether the group generated by the permutations acts transitively on range(d)."""
    parent = list(range(d))
    for g in generators:
        for i, j in enumerate(g):
            a, b = _find(parent, i), _find(parent, j)
            if a != b:
                parent[a] = b
    return len({_find(parent, i) for i in range(d)}) <= 1


def _merge(blocks: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    la, lb = blocks[a], blocks[b]
    if la == lb:
        return blocks
    lo, hi = min(la, lb), max(la, lb)
    return tuple(lo if x == hi else x for x in blocks)


def _orbit_blocks(perm: tuple[int, ...]) -> tuple[int, ...]:
    blocks = tuple(range(len(perm)))
    for i, j in enumerate(perm):
        blocks = _merge(blocks, i, j)
    return blocks


@lru_cache(maxsize=None)
def _leaves(
    remaining: int, rho: tuple[int, ...], blocks: tuple[int, ...], last_b: int, strict: bool
) -> Counter:
    """Counter of (cycle type of the final product, transitive) over all continuations."""
    if remaining == 0:
        return Counter({(cycle_type(rho), len(set(blocks)) == 1): 1})
    out: Counter = Counter()
    d = len(rho)
    for b in range(last_b + 1 if strict else max(last_b, 1), d):
        for a in range(b):
            # tau o rho: swap the values a and b
            new_rho = tuple(b if x == a else a if x == b else x for x in rho)
            out.update(_leaves(remaining - 1, new_rho, _merge(blocks, a, b), b, strict))
    return out


def count_factorizations(
    genus: int, mu: Sequence[int], nu: Sequence[int], variant: str = "monotone", connected: bool = True
) -> FactorizationCount:
    mu, nu = Partition(mu), Partition(nu)
    d = mu.size
    if d != nu.size:
        raise ValueError(f"|mu| = {d} differs from |nu| = {nu.size}")
    if d < 1:
        raise ValueError("degree must be positive")
    if variant not in ("monotone", "strict"):
        raise ValueError(f"unknown variant {variant!r}")
    m = 2 * genus - 2 + len(mu) + len(nu)
    if m < 0:
        return FactorizationCount(0, 0, d)
    strict = variant == "strict"
    raw = 0
    for sigma in permutations(range(d)):
        if cycle_type(sigma) != mu:
            continue
        leaves = _leaves(m, sigma, _orbit_blocks(sigma), 0 if strict else 1, strict)
        for (ctype, transitive), n in leaves.items():
            if ctype == nu and (transitive or not connected):
                raw += n
    return FactorizationCount(raw, raw * aut_order(mu) * aut_order(nu), d)
