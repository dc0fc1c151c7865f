"""Wick-matching engine and tropical covers.

Each vertex operator (G_{l+1} for Hurwitz numbers, M_k(u) for descendants) is
expanded into normally ordered alpha-strings. A vacuum expectation

    < prod alpha_{mu_t}  (strings of vertex 1) ... (strings of vertex n)  prod alpha_{-nu_j} >

is a sum over matchings: every positive germ (a mu-end, or a right-going germ
at vertex i) is paired with a negative germ of the same weight further right
(a left-going germ at a vertex j > i, or a nu-end), and each pair contributes
its weight. Grouping matchings up to relabeling of equal germs gives the
tropical covers.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterator, Sequence

from .exactcore import Poly, format_rational
from .fock import DescendantQuery, HurwitzQuery
from .gwlocal import hodge_factor, one_point_gw
from .partitions import Partition, aut_order, partitions, partitions_max_length

__all__ = [
    "VertexTerm",
    "TropicalCover",
    "ConcentrationReport",
    "expand_G",
    "expand_M",
    "wick_sum",
    "hurwitz_tropical",
    "gw_tropical",
    "concentration_check",
    "covers",
    "catalog_to_json",
    "catalog_to_dot",
]


@dataclass(frozen=True)
class VertexTerm:
    """One alpha-string of an expanded vertex operator.

    ``x_minus`` are the weights of the left-going germs (negative indices),
    ``x_plus`` those of the right-going germs.
    """

    coeff: Fraction
    x_minus: Partition
    x_plus: Partition
    g1: int = 0
    g2: int = 0
    u_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x_minus", Partition(self.x_minus))
        object.__setattr__(self, "x_plus", Partition(self.x_plus))
        if self.x_minus.size != self.x_plus.size:
            raise ValueError("germ weights must sum to zero")

    @property
    def germs(self) -> tuple[int, ...]:
        return tuple(sorted([-w for w in self.x_minus] + list(self.x_plus)))

    @property
    def valence(self) -> int:
        return len(self.x_minus) + len(self.x_plus)

    def with_coeff(self, coeff: Fraction) -> VertexTerm:
        return VertexTerm(coeff, self.x_minus, self.x_plus, self.g1, self.g2, self.u_power)


def _balanced_profiles(n: int, d: int) -> Iterator[tuple[Partition, Partition]]:
    """(x_minus, x_plus) with n germs in total, both sides nonempty, equal sums <= d."""
    for s in range(1, d + 1):
        for a in range(1, n):
            for xm in partitions_max_length(s, a):
                if len(xm) != a:
                    continue
                for xp in partitions_max_length(s, n - a):
                    if len(xp) == n - a:
                        yield xm, xp


@lru_cache(maxsize=None)
def _expand_G(l_part: int, d: int) -> tuple[VertexTerm, ...]:
    terms = []
    pref = factorial(l_part - 1)
    for g2 in range(0, (l_part + 2) // 2 + 1):
        for g1 in range(0, (l_part + 2) // 2 + 1):
            n = l_part + 2 - 2 * g1 - 2 * g2
            if n < 2:
                continue
            hf = hodge_factor(g2)
            for xm, xp in _balanced_profiles(n, d):
                c = pref * hf * one_point_gw(xp, xm, g1)
                if c:
                    terms.append(VertexTerm(c, xm, xp, g1, g2, 0))
    return tuple(terms)


def expand_G(l_part: int, d: int) -> tuple[VertexTerm, ...]:
    """Alpha-strings of G_{l+1} = (l-1)! sum_k c_{2k-1} F_{l-2k+1} with germ weights <= d.

    Coefficient of a string x at genus pair (g1, g2):
    (l-1)! <tau_{2 g2 - 2}>_{g2} <x+, tau, x->_{g1}; strings have l + 2 - 2 g1 - 2 g2 >= 2 germs.
    """
    if l_part < 1 or d < 1:
        raise ValueError("need l_part >= 1 and d >= 1")
    return _expand_G(l_part, d)


@lru_cache(maxsize=None)
def _expand_M(k: int, d: int, with_u: bool) -> tuple[VertexTerm, ...]:
    terms = []
    for g in range(0, k // 2 + 2):
        n = k + 2 - 2 * g
        if n < 0 or n == 1:
            continue
        if n == 0:
            c = one_point_gw((), (), g)
            if c:
                terms.append(VertexTerm(c, (), (), g, 0, g - 1 if with_u else 0))
            continue
        for xm, xp in _balanced_profiles(n, d):
            c = one_point_gw(xp, xm, g)
            if c:
                up = len(xm) + g - 1 if with_u else 0
                terms.append(VertexTerm(c, xm, xp, g, 0, up))
    return tuple(terms)


def expand_M(k: int, d: int, with_u: bool = True) -> tuple[VertexTerm, ...]:
    """Alpha-strings of M_k(u), i.e. of F^sh_{k+1} with a u-grading.

    Strings have k + 2 - 2g germs (the empty string included); the coefficient
    is <x+, tau_k, x->_g and the u-exponent is (number of left-going germs) + g - 1.
    """
    if k < 0:
        raise ValueError("descendant index must be >= 0")
    return _expand_M(k, max(d, 0), with_u)


# --- matching-level evaluation -------------------------------------------------


def _merge(comp: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    la, lb = comp[a], comp[b]
    if la == lb:
        return comp
    lo, hi = min(la, lb), max(la, lb)
    return tuple(lo if x == hi else x for x in comp)


def _distribute(need: int, classes: list[tuple[int, int]]) -> Iterator[tuple[int, list[tuple[int, int]]]]:
    """Ways to attach ``need`` distinguishable germs to strands grouped as
    (origin, count); yields (number of injections, [(origin, used)])."""
    if need == 0:
        yield 1, []
        return
    if not classes:
        return
    (origin, n), rest = classes[0], classes[1:]
    if sum(c for _, c in rest) + n < need:
        return
    for used in range(min(n, need), -1, -1):
        # choose which germs go here, then an injection into this origin's strands
        ways_here = factorial(need) // (factorial(used) * factorial(need - used))
        ways_here *= factorial(n) // factorial(n - used)
        for ways_rest, picks in _distribute(need - used, rest):
            yield ways_here * ways_rest, ([(origin, used)] if used else []) + picks


def wick_sum(
    mu: Sequence[int],
    nu: Sequence[int],
    streams: Sequence[Sequence[VertexTerm]],
    connected: bool = False,
    on_summand: Callable[[tuple[VertexTerm, ...], Poly], None] | None = None,
) -> Poly:
    """Sum over one term per vertex and all admissible matchings of
    prod coeff * prod (pair weights) * u^{sum u_power}.

    The pair weights include the end weights, so the result carries
    prod mu_i prod nu_j; callers divide it out. With ``connected`` only
    matchings whose graph (mu-ends and vertices joined by pairs) is connected
    are kept. ``on_summand`` sees each term choice with its nonzero subtotal.
    """
    mu, nu = list(Partition(mu)), list(Partition(nu))
    if sum(mu) != sum(nu):
        return Poly()
    n_mu, n_v = len(mu), len(streams)
    n_origins = n_mu + n_v
    target = Counter(nu)
    nu_factor = prod(nu)
    total: dict[int, Fraction] = defaultdict(Fraction)

    init_open: dict[int, dict[int, int]] = defaultdict(dict)
    for t, w in enumerate(mu):
        init_open[w][t] = 1

    def finish(open_, comp, chosen, weight) -> None:
        counts = Counter({w: sum(o.values()) for w, o in open_.items() if sum(o.values())})
        if counts != target:
            return
        if connected and len(set(comp)) > 1:
            return
        ways = prod(factorial(c) for c in counts.values())
        value = weight * ways * nu_factor
        power = sum(t.u_power for t in chosen)
        total[power] += value
        if on_summand is not None:
            on_summand(tuple(chosen), Poly.monomial(value, power))

    def rec(i, open_, comp, chosen, weight) -> None:
        if i == n_v:
            finish(open_, comp, chosen, weight)
            return
        origin_i = n_mu + i
        for term in streams[i]:
            need = Counter(term.x_minus)
            if any(sum(open_.get(w, {}).values()) < c for w, c in need.items()):
                continue
            base = weight * term.coeff * prod(term.x_minus)
            choices: list[tuple[int, list[tuple[int, int, int]]]] = [(1, [])]
            for w, c in need.items():
                classes = sorted(open_[w].items())
                choices = [
                    (ways * more, picks + [(w, o, u) for o, u in extra])
                    for ways, picks in choices
                    for more, extra in _distribute(c, classes)
                ]
            for ways, picks in choices:
                new_open = {w: dict(o) for w, o in open_.items()}
                new_comp = comp
                for w, o, used in picks:
                    left = new_open[w][o] - used
                    if left:
                        new_open[w][o] = left
                    else:
                        del new_open[w][o]
                    new_comp = _merge(new_comp, o, origin_i)
                for w, c in Counter(term.x_plus).items():
                    new_open.setdefault(w, {})[origin_i] = c
                chosen.append(term)
                rec(i + 1, new_open, new_comp, chosen, base * ways)
                chosen.pop()

    rec(0, {w: dict(o) for w, o in init_open.items()}, tuple(range(n_origins)), [], Fraction(1))
    return Poly(total)


# --- Hurwitz numbers -------------------------------------------------------------


def _sign(term: VertexTerm) -> int:
    return 1 if (1 + term.valence) % 2 == 0 else -1


@lru_cache(maxsize=None)
def _hurwitz_streams(variant: str, l_part: int, d: int) -> tuple[VertexTerm, ...]:
    terms = expand_G(l_part, d)
    if variant == "strict":
        terms = tuple(t.with_coeff(_sign(t) * t.coeff) for t in terms)
    return terms


def _ordering_weight(lam: Sequence[int]) -> Fraction:
    return Fraction(1, aut_order(lam))


def hurwitz_tropical(q: HurwitzQuery) -> Fraction:
    """sum_{lambda |- m} wick_sum(mu, nu, [G_{lambda_1 + 1}, ...]) / (|Aut lambda| prod mu prod nu).

    For the strict variant every vertex term carries (-1)^{1 + valence}.
    """
    m = q.m
    if m < 0:
        return Fraction(0)
    d = q.degree
    norm = prod(q.mu) * prod(q.nu)
    total = Fraction(0)
    for lam in partitions(m):
        streams = [_hurwitz_streams(q.variant, part, d) for part in lam]
        value = wick_sum(q.mu, q.nu, streams, connected=q.connected).at_one()
        total += _ordering_weight(lam) * value
    return total / norm


# --- descendants ---------------------------------------------------------------------


def gw_tropical(q: DescendantQuery, keep_u: bool = False) -> Poly | Fraction:
    """wick_sum over M_{k_i}(u) divided by prod mu prod nu.

    This is |Aut mu| |Aut nu| times the descendant invariant; with ``keep_u`` the
    whole u-polynomial is returned, otherwise its value at u = 1.
    """
    d = q.degree
    streams = [expand_M(k, d) for k in q.descendants]
    poly = wick_sum(q.mu, q.nu, streams, connected=q.connected)
    poly = poly * Fraction(1, prod(q.mu) * prod(q.nu))
    return poly if keep_u else poly.at_one()


@dataclass
class ConcentrationReport:
    query: DescendantQuery
    k0: Fraction
    polynomial: Poly
    summands: int = 0
    violations: list[tuple[tuple[VertexTerm, ...], Poly]] = field(default_factory=list)

    @property
    def concentrated(self) -> bool:
        return all(k == self.k0 for k in self.polynomial.degrees())

    @property
    def passed(self) -> bool:
        return self.concentrated and not self.violations


def concentration_check(q: DescendantQuery) -> ConcentrationReport:
    """Check that the u-polynomial lives in degree K0 = (sum k + l(mu) - l(nu)) / 2,
    and that every nonzero summand individually has u-degree K0."""
    d = q.degree
    streams = [expand_M(k, d) for k in q.descendants]
    report = ConcentrationReport(q, q.k0, Poly())

    def seen(chosen, value: Poly) -> None:
        report.summands += 1
        (power,) = value.degrees()
        if power != q.k0:
            report.violations.append((chosen, value))

    poly = wick_sum(q.mu, q.nu, streams, connected=q.connected, on_summand=seen)
    report.polynomial = poly * Fraction(1, prod(q.mu) * prod(q.nu))
    return report


# --- covers -------------------------------------------------------------------------


@dataclass(frozen=True)
class TropicalCover:
    """Combinatorial type of a cover of the tropical line.

    Vertices 0..n-1 sit left to right. ``edges`` are internal (source, target, weight)
    with source < target. ``left_ends`` are (weight, vertex) for the mu-ends and
    ``right_ends`` (weight, vertex) for the nu-ends; vertex ``None`` marks a strand
    running from a mu-end straight to a nu-end.
    """

    genera: tuple[tuple[int, int], ...]
    terms: tuple[VertexTerm, ...]
    edges: tuple[tuple[int, int, int], ...]
    left_ends: tuple[tuple[int, int | None], ...]
    right_ends: tuple[tuple[int, int | None], ...]
    weight: Fraction = Fraction(0)
    matchings: int = 0
    aut: int = 1

    @property
    def valences(self) -> tuple[int, ...]:
        return tuple(t.valence for t in self.terms)

    @property
    def lambda_parts(self) -> tuple[int, ...]:
        return tuple(t.valence + 2 * (g1 + g2) - 2 for t, (g1, g2) in zip(self.terms, self.genera))

    @property
    def through_strands(self) -> int:
        return sum(1 for _, v in self.left_ends if v is None)

    def components(self) -> int:
        n = len(self.terms)
        # nodes: vertices, then left ends, then right ends
        parent = list(range(n + len(self.left_ends) + len(self.right_ends)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(a, b):
            parent[find(a)] = find(b)

        for s, t, _ in self.edges:
            union(s, t)
        through_left = [n + i for i, (_, v) in enumerate(self.left_ends) if v is None]
        through_right = [n + len(self.left_ends) + j for j, (_, v) in enumerate(self.right_ends) if v is None]
        for i, (_, v) in enumerate(self.left_ends):
            if v is not None:
                union(n + i, v)
        for j, (_, v) in enumerate(self.right_ends):
            if v is not None:
                union(n + len(self.left_ends) + j, v)
        # through strands pair up in weight order (which pairing is irrelevant here)
        for a, b in zip(through_left, through_right):
            union(a, b)
        return len({find(i) for i in range(len(parent))})

    @property
    def betti(self) -> int:
        """First Betti number of the graph with every end capped by a leaf vertex."""
        n_nodes = len(self.terms) + len(self.left_ends) + len(self.right_ends)
        n_edges = len(self.edges) + len(self.left_ends) + len(self.right_ends) - self.through_strands
        return n_edges - n_nodes + self.components()

    @property
    def genus(self) -> int:
        return self.betti + sum(g1 + g2 for g1, g2 in self.genera)

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"index": i, "g1": g1, "g2": g2, "valence": t.valence, "lambda": lp}
                for i, ((g1, g2), t, lp) in enumerate(zip(self.genera, self.terms, self.lambda_parts))
            ],
            "edges": [{"source": s, "target": t, "weight": w} for s, t, w in self.edges],
            "left_ends": [{"weight": w, "vertex": v} for w, v in self.left_ends],
            "right_ends": [{"weight": w, "vertex": v} for w, v in self.right_ends],
            "weight": format_rational(self.weight),
            "aut": self.aut,
            "matchings": self.matchings,
        }


def _explicit_matchings(mu, nu, chosen: Sequence[VertexTerm]):
    """Every labeled matching for one fixed choice of vertex terms.

    Yields (internal edges, left end targets, right end sources) where ends are
    indexed by their position in mu / nu and None marks a through strand.
    """
    n_v = len(chosen)

    def rec(i, open_, edges, left):
        if i == n_v:
            yield from close(open_, edges, left)
            return
        term = chosen[i]
        for picks in inject(list(term.x_minus), open_, []):
            new_open = [s for s in open_ if s not in picks]
            new_edges, new_left = list(edges), dict(left)
            for origin, _w, _k in picks:
                if origin[0] == "mu":
                    new_left[origin[1]] = i
                else:
                    new_edges.append((origin[1], i, _w))
            for k, w in enumerate(term.x_plus):
                new_open.append((("v", i), w, k))
            yield from rec(i + 1, new_open, new_edges, new_left)

    def inject(ws, open_, taken):
        if not ws:
            yield list(taken)
            return
        w, rest = ws[0], ws[1:]
        for s in open_:
            if s[1] == w and s not in taken:
                taken.append(s)
                yield from inject(rest, open_, taken)
                taken.pop()

    def close(open_, edges, left):
        def assign(j, remaining, right, left_):
            if j == len(nu):
                yield tuple(sorted(edges)), dict(left_), dict(right)
                return
            for s in remaining:
                if s[1] == nu[j]:
                    rest = [r for r in remaining if r is not s]
                    origin = s[0]
                    right[j] = origin[1] if origin[0] == "v" else None
                    l2 = left_
                    if origin[0] == "mu":
                        l2 = dict(left_)
                        l2[origin[1]] = None
                    yield from assign(j + 1, rest, right, l2)
                    del right[j]

        if sorted(w for _, w, _ in open_) == sorted(nu):
            yield from assign(0, list(open_), {}, left)

    start = [(("mu", t), w, 0) for t, w in enumerate(mu)]
    yield from rec(0, start, [], {})


def covers(q: HurwitzQuery | DescendantQuery) -> list[TropicalCover]:
    """Catalog of covers contributing to the query, grouped from explicit matchings.

    Each cover's weight is the sum of its matchings' contributions, so the
    weights add up to the query's value. ``aut`` is
    prod_v |Aut x_v+| |Aut x_v-| * |Aut mu| |Aut nu| / (number of matchings).
    """
    mu, nu = list(q.mu), list(q.nu)
    d = q.degree
    norm = Fraction(1, prod(mu) * prod(nu))
    if isinstance(q, HurwitzQuery):
        if q.m < 0:
            return []
        plans = [
            ([_hurwitz_streams(q.variant, p, d) for p in lam], _ordering_weight(lam))
            for lam in partitions(q.m)
        ]
    else:
        plans = [([expand_M(k, d, with_u=False) for k in q.descendants], Fraction(1))]

    groups: dict = {}
    for streams, w_lam in plans:
        for chosen in _term_choices(mu, nu, streams):
            base = w_lam * norm * prod(t.coeff for t in chosen) * prod(prod(t.x_minus) for t in chosen) * prod(nu)
            for edges, left, right in _explicit_matchings(mu, nu, chosen):
                left_ends = tuple(sorted(((mu[t], left.get(t)) for t in range(len(mu))), key=_end_key))
                right_ends = tuple(sorted(((nu[j], right[j]) for j in range(len(nu))), key=_end_key))
                key = (tuple((t.g1, t.g2) for t in chosen), chosen, edges, left_ends, right_ends)
                cover = TropicalCover(key[0], chosen, edges, left_ends, right_ends)
                if q.connected and cover.components() != 1:
                    continue
                entry = groups.setdefault(key, [cover, Fraction(0), 0])
                entry[1] += base
                entry[2] += 1

    out = []
    for cover, weight, count in groups.values():
        group_order = prod(aut_order(t.x_plus) * aut_order(t.x_minus) for t in cover.terms)
        group_order *= aut_order(mu) * aut_order(nu)
        out.append(
            TropicalCover(
                cover.genera, cover.terms, cover.edges, cover.left_ends, cover.right_ends,
                weight, count, group_order // count,
            )
        )
    out.sort(key=lambda c: (len(c.terms), c.lambda_parts, c.edges, [_end_key(e) for e in c.left_ends],
                            [_end_key(e) for e in c.right_ends], c.genera))
    return out


def _end_key(end):
    w, v = end
    return (w, -1 if v is None else v)


def _term_choices(mu, nu, streams) -> Iterator[tuple[VertexTerm, ...]]:
    """Term choices whose germs can be matched at all (flux bookkeeping only)."""
    target = Counter(nu)

    def rec(i, avail: Counter, chosen):
        if i == len(streams):
            if +avail == target:
                yield tuple(chosen)
            return
        for t in streams[i]:
            need = Counter(t.x_minus)
            if any(avail[w] < c for w, c in need.items()):
                continue
            nxt = avail - need
            nxt.update(t.x_plus)
            chosen.append(t)
            yield from rec(i + 1, nxt, chosen)
            chosen.pop()

    yield from rec(0, Counter(mu), [])


def catalog_to_json(q, catalog: Sequence[TropicalCover]) -> dict:
    return {
        "query": _query_json(q),
        "value": format_rational(sum((c.weight for c in catalog), Fraction(0))),
        "covers": [c.to_json() for c in catalog],
    }


def _query_json(q) -> dict:
    if isinstance(q, HurwitzQuery):
        return {"kind": "hurwitz", "variant": q.variant, "genus": q.genus, "mu": list(q.mu),
                "nu": list(q.nu), "connected": q.connected}
    return {"kind": "gw", "mu": list(q.mu), "nu": list(q.nu), "descendants": list(q.descendants),
            "connected": q.connected}


def catalog_to_dot(catalog: Sequence[TropicalCover]) -> str:
    blocks = []
    for n, c in enumerate(catalog):
        lines = [f"graph cover{n} {{", "  rankdir=LR;",
                 f'  label="weight={format_rational(c.weight)} aut={c.aut}";']
        for i, (g1, g2) in enumerate(c.genera):
            lines.append(f'  v{i} [label="g=({g1},{g2})"];')
        for s, t, w in c.edges:
            lines.append(f'  v{s} -- v{t} [label="w={w}"];')
        through = []
        for i, (w, v) in enumerate(c.left_ends):
            lines.append(f'  L{i} [shape=point];')
            if v is None:
                through.append((i, w))
            else:
                lines.append(f'  L{i} -- v{v} [label="w={w}"];')
        through_right = [j for j, (_, v) in enumerate(c.right_ends) if v is None]
        for j, (w, v) in enumerate(c.right_ends):
            lines.append(f'  R{j} [shape=point];')
            if v is not None:
                lines.append(f'  v{v} -- R{j} [label="w={w}"];')
        for (i, w), j in zip(through, through_right):
            lines.append(f'  L{i} -- R{j} [label="w={w}"];')
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
