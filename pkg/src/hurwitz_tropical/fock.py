"""Reference values from the Fock space, evaluated in the Schur basis.

The vectors ``prod_j alpha_{-nu_j} |0>`` expand as ``sum_lambda chi^lambda_nu v_lambda``,
so every vacuum expectation of diagonal operators between two alpha-products is
a finite character sum over partitions of d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Hashable, Sequence, TypeVar

from .exactcore import Poly, c_coeff
from .partitions import (
    Partition,
    character,
    complete_homogeneous,
    contents,
    elementary_symmetric,
    partitions,
    set_partitions,
)

V = TypeVar("V")

VARIANTS = ("monotone", "strict")

__all__ = [
    "VARIANTS",
    "HurwitzQuery",
    "DescendantQuery",
    "f_eigenvalue",
    "hurwitz_disconnected",
    "hurwitz_connected",
    "hurwitz_fock",
    "gw_disconnected",
    "gw_connected",
    "gw_fock",
    "connect",
    "mobius_connect",
]


@dataclass(frozen=True)
class HurwitzQuery:
    variant: str
    genus: int
    mu: Partition
    nu: Partition
    connected: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "nu", Partition(self.nu))
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.mu.size != self.nu.size:
            raise ValueError(f"|mu| = {self.mu.size} differs from |nu| = {self.nu.size}")
        if self.mu.size == 0:
            raise ValueError("degree must be positive")

    @property
    def degree(self) -> int:
        return self.mu.size

    @property
    def m(self) -> int:
        """Number of simple branch points, 2g - 2 + l(mu) + l(nu)."""
        return 2 * self.genus - 2 + len(self.mu) + len(self.nu)


@dataclass(frozen=True)
class DescendantQuery:
    mu: Partition
    nu: Partition
    descendants: tuple[int, ...] = field(default=())
    connected: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "nu", Partition(self.nu))
        object.__setattr__(self, "descendants", tuple(int(k) for k in self.descendants))
        if any(k < 0 for k in self.descendants):
            raise ValueError("descendant indices must be >= 0")
        if self.mu.size != self.nu.size:
            raise ValueError(f"|mu| = {self.mu.size} differs from |nu| = {self.nu.size}")

    @property
    def degree(self) -> int:
        return self.mu.size

    @property
    def parity_ok(self) -> bool:
        return (sum(self.descendants) - len(self.mu) - len(self.nu)) % 2 == 0

    @property
    def genus(self) -> int | None:
        """Genus fixed by sum k_i = 2g - 2 + l(mu) + l(nu), or None if it is not a valid one."""
        twice = sum(self.descendants) + 2 - len(self.mu) - len(self.nu)
        if twice < 0 or twice % 2:
            return None
        return twice // 2

    @property
    def k0(self) -> Fraction:
        """The u-degree (sum k_i + l(mu) - l(nu)) / 2 that carries the connected correlator."""
        return Fraction(sum(self.descendants) + len(self.mu) - len(self.nu), 2)


@lru_cache(maxsize=None)
def _f_eigenvalue(l: int, lam: tuple[int, ...], shifted: bool) -> Fraction:
    if l <= 0:
        return Fraction(0)
    half = Fraction(1, 2)
    s = sum(
        ((p - i + half) ** l - (-i + half) ** l for i, p in enumerate(lam, start=1)),
        Fraction(0),
    )
    s /= factorial(l)
    if shifted and l % 2 == 1:
        s += c_coeff(l)
    return s


def f_eigenvalue(l: int, lam: Sequence[int], shifted: bool = False) -> Fraction:
    """Eigenvalue of F_l (or F_l^sh) on v_lambda; zero for l <= 0."""
    return _f_eigenvalue(l, tuple(Partition(lam)), shifted)


@lru_cache(maxsize=None)
def _content_sym(variant: str, m: int, lam: tuple[int, ...]) -> Fraction:
    cr = contents(lam)
    if variant == "monotone":
        return complete_homogeneous(m, cr)
    return elementary_symmetric(m, cr)


@lru_cache(maxsize=None)
def _hurwitz_disc(variant: str, mu: tuple[int, ...], nu: tuple[int, ...], m: int) -> Fraction:
    if m < 0:
        return Fraction(0)
    d = sum(mu)
    total = Fraction(0)
    for lam in partitions(d):
        a = character(lam, mu)
        if not a:
            continue
        b = character(lam, nu)
        if not b:
            continue
        total += a * b * _content_sym(variant, m, tuple(lam))
    return total / (prod(mu) * prod(nu))


def hurwitz_disconnected(q: HurwitzQuery) -> Fraction:
    """(1 / prod mu prod nu) sum_lambda chi_mu chi_nu P_m(cr^lambda), P = h_m or sigma_m."""
    return _hurwitz_disc(q.variant, tuple(q.mu), tuple(q.nu), q.m)


def _hurwitz_block_poly(variant: str, m_max: int):
    def block(mu_b, nu_b, _extras) -> Poly:
        return Poly({k: _hurwitz_disc(variant, mu_b, nu_b, k) for k in range(m_max + 1)})

    return block


def hurwitz_connected(q: HurwitzQuery) -> Fraction:
    """Connected count: inclusion-exclusion over the ends, with the branch
    points distributed over the blocks (tracked as powers of u)."""
    if q.m < 0:
        return Fraction(0)
    poly = connect(
        _hurwitz_block_poly(q.variant, q.m),
        q.mu,
        q.nu,
        (),
        mul=lambda a, b: (a * b).truncate(q.m),
        zero=Poly(),
    )
    return poly.coefficient(q.m)


def hurwitz_fock(q: HurwitzQuery) -> Fraction:
    return hurwitz_connected(q) if q.connected else hurwitz_disconnected(q)


@lru_cache(maxsize=None)
def _gw_disc(mu: tuple[int, ...], nu: tuple[int, ...], ks: tuple[int, ...]) -> Fraction:
    d = sum(mu)
    total = Fraction(0)
    for lam in partitions(d):
        a = character(lam, mu)
        if not a:
            continue
        b = character(lam, nu)
        if not b:
            continue
        term = Fraction(a * b)
        for k in ks:
            term *= _f_eigenvalue(k + 1, tuple(lam), True)
            if not term:
                break
        total += term
    return total / (prod(mu) * prod(nu))


def gw_disconnected(q: DescendantQuery) -> Fraction:
    """(1 / prod mu prod nu) <prod alpha_mu prod F^sh_{k_i + 1} prod alpha_{-nu}>.

    This equals |Aut mu| |Aut nu| times the disconnected descendant invariant.
    """
    return _gw_disc(tuple(q.mu), tuple(q.nu), tuple(sorted(q.descendants)))


def gw_connected(q: DescendantQuery) -> Fraction:
    return connect(
        lambda mu_b, nu_b, ks: _gw_disc(mu_b, nu_b, ks),
        q.mu,
        q.nu,
        q.descendants,
        allow_empty_ends=True,
    )


def gw_fock(q: DescendantQuery) -> Fraction:
    return gw_connected(q) if q.connected else gw_disconnected(q)


def _split(labels):
    mu_b = tuple(sorted((v for s, v in labels if s == "mu"), reverse=True))
    nu_b = tuple(sorted((v for s, v in labels if s == "nu"), reverse=True))
    ex = tuple(sorted(v for s, v in labels if s == "x"))
    return mu_b, nu_b, ex


def _admissible(mu_b, nu_b, allow_empty_ends: bool) -> bool:
    if sum(mu_b) != sum(nu_b):
        return False
    return allow_empty_ends or bool(mu_b)


def connect(
    evaluator: Callable[[tuple, tuple, tuple], V],
    mu: Sequence[int],
    nu: Sequence[int],
    extras: Sequence[Hashable] = (),
    *,
    mul: Callable[[V, V], V] | None = None,
    zero: V = Fraction(0),
    allow_empty_ends: bool = False,
) -> V:
    """Connected value from a disconnected evaluator by inclusion-exclusion.

    The labeled set is the parts of mu, the parts of nu and the extra
    insertions. ``evaluator(mu_B, nu_B, extras_B)`` gives the disconnected value
    of a block (arguments sorted); blocks whose mu- and nu-sums differ
    contribute zero. Blocks with no ends at all are only admitted when
    ``allow_empty_ends`` (degree-zero insertions).

    Implemented with the recursion conn(S) = disc(S) - sum_{B containing s0,
    B != S} conn(B) disc(S \\ B), which is the Moebius inversion over the set
    partition lattice; :func:`mobius_connect` sums the lattice directly.
    """
    mul = mul or (lambda a, b: a * b)
    labels = [("mu", p) for p in mu] + [("nu", p) for p in nu] + [("x", e) for e in extras]
    disc_cache: dict = {}
    conn_cache: dict = {}

    def disc(lbls) -> V:
        key = _split(lbls)
        if key not in disc_cache:
            mu_b, nu_b, ex = key
            disc_cache[key] = evaluator(mu_b, nu_b, ex) if _admissible(mu_b, nu_b, allow_empty_ends) else zero
        return disc_cache[key]

    def conn(lbls) -> V:
        key = _split(lbls)
        if key in conn_cache:
            return conn_cache[key]
        mu_b, nu_b, _ = key
        if not _admissible(mu_b, nu_b, allow_empty_ends):
            conn_cache[key] = zero
            return zero
        first, rest = lbls[0], lbls[1:]
        value = disc(lbls)
        n = len(rest)
        for mask in range(2**n - 1):
            inside = [first] + [rest[i] for i in range(n) if mask >> i & 1]
            outside = [rest[i] for i in range(n) if not mask >> i & 1]
            mi, ni, _ = _split(inside)
            if not _admissible(mi, ni, allow_empty_ends):
                continue
            c = conn(inside)
            if c == zero:
                continue
            value = value - mul(c, disc(outside))
        conn_cache[key] = value
        return value

    if not labels:
        return evaluator((), (), ())
    return conn(labels)


def mobius_connect(
    evaluator: Callable[[tuple, tuple, tuple], V],
    mu: Sequence[int],
    nu: Sequence[int],
    extras: Sequence[Hashable] = (),
    *,
    mul: Callable[[V, V], V] | None = None,
    zero: V = Fraction(0),
    allow_empty_ends: bool = False,
) -> V:
    """Explicit sum over set partitions with weights (-1)^{k-1} (k-1)!."""
    mul = mul or (lambda a, b: a * b)
    labels = [("mu", p) for p in mu] + [("nu", p) for p in nu] + [("x", e) for e in extras]
    cache: dict = {}
    total = zero
    for blocks in set_partitions(labels):
        value = None
        for b in blocks:
            key = _split(b)
            if not _admissible(key[0], key[1], allow_empty_ends):
                value = zero
                break
            if key not in cache:
                cache[key] = evaluator(*key)
            value = cache[key] if value is None else mul(value, cache[key])
        if value is None or value == zero:
            continue
        k = len(blocks)
        weight = (-1) ** (k - 1) * factorial(k - 1)
        total = total + value * weight
    return total
