from collections import Counter
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_tropical.exactcore import Poly
from hurwitz_tropical.fock import DescendantQuery, HurwitzQuery, connect, gw_fock, hurwitz_fock
from hurwitz_tropical.partitions import aut_order, partitions
from hurwitz_tropical.tropical import (
    VertexTerm,
    _hurwitz_streams,
    catalog_to_dot,
    catalog_to_json,
    concentration_check,
    covers,
    expand_G,
    expand_M,
    gw_tropical,
    hurwitz_tropical,
    wick_sum,
)


def find(terms, xm, xp, g1=0, g2=0):
    hits = [t for t in terms if (t.x_minus, t.x_plus, t.g1, t.g2) == (xm, xp, g1, g2)]
    assert len(hits) == 1
    return hits[0]


def test_expand_G_examples():
    assert find(expand_G(1, 3), (2, 1), (3,)).coeff == 1
    assert all(len(t.germs) == 3 for t in expand_G(1, 3))
    assert expand_G(1, 1) == ()
    assert find(expand_G(2, 1), (1,), (1,), 1, 0).coeff == Fraction(1, 24)
    assert find(expand_G(2, 1), (1,), (1,), 0, 1).coeff == Fraction(-1, 24)
    # [z^2] S(z)^3 = 1/8, over Aut = 4, times 3!
    assert find(expand_G(4, 2), (1, 1), (1, 1), 1, 0).coeff == Fraction(3, 16)
    assert all(t.valence >= 2 and t.u_power == 0 for t in expand_G(4, 3))


def test_expand_M_examples():
    t = find(expand_M(0, 1), (1,), (1,))
    assert (t.coeff, t.u_power) == (1, 0)
    t = find(expand_M(2, 1), (), (), 2)
    assert (t.coeff, t.u_power) == (Fraction(7, 5760), 1)
    t = find(expand_M(1, 2), (1, 1), (2,))
    assert t.coeff == Fraction(1, 2)
    t = find(expand_M(1, 2), (2,), (1, 1))
    assert t.u_power == 0


def test_vertex_term_balance():
    with pytest.raises(ValueError):
        VertexTerm(Fraction(1), (2,), (1,))


def test_wick_examples():
    term = VertexTerm(Fraction(1), (2, 1), (3,))
    assert wick_sum((2, 1), (3,), [[term]]).at_one() == 2 * 1 * 3
    assert wick_sum((1,), (1,), []).at_one() == 1


@pytest.mark.parametrize("n", range(0, 7))
def test_pairing_identity(n):
    for mu in partitions(n):
        for nu in partitions(n):
            expected = aut_order(mu) * prod(mu) if mu == nu else 0
            assert wick_sum(mu, nu, []).at_one() == expected


def test_pairing_across_sizes():
    assert wick_sum((2,), (1,), []).is_zero()


germ_lists = st.lists(st.integers(1, 3), min_size=1, max_size=3)


@st.composite
def mismatched(draw):
    terms = []
    for _ in range(draw(st.integers(1, 2))):
        xm = draw(germ_lists)
        s = sum(xm)
        xp = draw(st.sampled_from(list(partitions(s))))
        terms.append(VertexTerm(Fraction(1), xm, xp))
    mu = draw(germ_lists)
    nu = draw(st.sampled_from(list(partitions(sum(mu)))))
    return mu, nu, terms


@settings(max_examples=120, deadline=None)
@given(mismatched())
def test_vanishing_lemma(case):
    mu, nu, terms = case
    pos = Counter(mu)
    neg = Counter(nu)
    for t in terms:
        pos.update(t.x_plus)
        neg.update(t.x_minus)
    value = wick_sum(mu, nu, [[t] for t in terms])
    if pos != neg:
        assert value.is_zero()


@pytest.mark.parametrize("d", range(1, 5))
def test_linked_cluster_hurwitz(d):
    for mu in partitions(d):
        for nu in partitions(d):
            for lam in [(1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1)]:
                if len(mu) + len(nu) + len(lam) > 7:
                    continue
                streams = lambda ex: [_hurwitz_streams("monotone", p, d) for p in ex]
                direct = wick_sum(mu, nu, streams(lam), connected=True).at_one()
                ev = lambda a, b, ex: wick_sum(a, b, streams(ex)).at_one()
                assert direct == connect(ev, mu, nu, lam)


@pytest.mark.parametrize("d", range(1, 4))
def test_linked_cluster_descendants(d):
    for mu in partitions(d):
        for nu in partitions(d):
            for ks in [(0,), (1,), (2,), (0, 0), (0, 1), (1, 2)]:
                streams = lambda ex: [expand_M(k, d) for k in ex]
                direct = wick_sum(mu, nu, streams(ks), connected=True)
                ev = lambda a, b, ex: wick_sum(a, b, streams(ex))
                via = connect(ev, mu, nu, ks, mul=lambda x, y: x * y, zero=Poly(), allow_empty_ends=True)
                assert direct == via


@pytest.mark.parametrize(
    "variant, mu, nu, expected",
    [("monotone", (2, 1), (3,), 1), ("monotone", (3, 1), (3, 1), 4), ("strict", (2, 1), (3,), 1)],
)
def test_hurwitz_examples(variant, mu, nu, expected):
    assert hurwitz_tropical(HurwitzQuery(variant, 0, mu, nu)) == expected


def test_gw_examples():
    assert gw_tropical(DescendantQuery((1,), (1,), (0,)), keep_u=True) == Poly({0: 1})
    poly = gw_tropical(DescendantQuery((2,), (1, 1), (1,)), keep_u=True)
    assert poly.degrees() == [0]
    assert poly.at_one() == gw_fock(DescendantQuery((2,), (1, 1), (1,)))
    disc = DescendantQuery((1,), (1,), (2,), False)
    assert gw_tropical(disc) == gw_fock(disc)
    assert any(not t.germs and t.coeff == Fraction(7, 5760) for t in expand_M(2, 1))


@pytest.mark.parametrize(
    "mu, nu, ks, k0",
    [((1,), (1,), (0,), 0), ((2, 1), (3,), (1,), 1), ((1,), (1,), (), 0)],
)
def test_concentration_examples(mu, nu, ks, k0):
    r = concentration_check(DescendantQuery(mu, nu, ks))
    assert r.passed
    assert r.k0 == k0


def test_covers_anchor_one():
    cat = covers(HurwitzQuery("monotone", 0, (2, 1), (3,)))
    assert [c.weight for c in cat] == [1]


def test_covers_anchor_two():
    cat = covers(HurwitzQuery("monotone", 0, (3, 1), (3, 1)))
    assert sorted(c.weight for c in cat) == [1, 1, 2]
    assert all(c.aut == 1 for c in cat)
    assert catalog_to_dot(cat).count("graph cover") == 3
    doc = catalog_to_json(HurwitzQuery("monotone", 0, (3, 1), (3, 1)), cat)
    assert doc["value"] == "4" and len(doc["covers"]) == 3


def test_covers_single_strand():
    cat = covers(HurwitzQuery("monotone", 0, (1,), (1,)))
    assert len(cat) == 1
    assert cat[0].weight == 1 and not cat[0].terms and cat[0].through_strands == 1


def hurwitz_grid(max_d, max_m):
    for d in range(1, max_d + 1):
        for mu in partitions(d):
            for nu in partitions(d):
                for g in range(0, 3):
                    for v in ("monotone", "strict"):
                        q = HurwitzQuery(v, g, mu, nu)
                        if 0 <= q.m <= max_m:
                            yield q


def test_euler_consistency_and_completeness():
    for q in hurwitz_grid(4, 4):
        cat = covers(q)
        for c in cat:
            assert c.genus == q.genus
            assert sum(c.lambda_parts) == q.m
        assert sum((c.weight for c in cat), Fraction(0)) == hurwitz_tropical(q)


@pytest.mark.parametrize("d", range(1, 4))
def test_tropical_matches_fock_small(d):
    for q in hurwitz_grid(d, 4):
        if q.degree == d:
            assert hurwitz_tropical(q) == hurwitz_fock(q)
            dq = HurwitzQuery(q.variant, q.genus, q.mu, q.nu, False)
            assert hurwitz_tropical(dq) == hurwitz_fock(dq)
