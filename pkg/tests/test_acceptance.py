"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""

import time
from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial, prod

from hurwitz_tropical.exactcore import Poly, S_series, bernoulli, c_coeff
from hurwitz_tropical.fock import (
    DescendantQuery,
    HurwitzQuery,
    connect,
    f_eigenvalue,
    gw_fock,
    hurwitz_fock,
)
from hurwitz_tropical.partitions import (
    aut_order,
    character,
    complete_homogeneous,
    contents,
    elementary_symmetric,
    partitions,
    power_sum,
    z_order,
)
from hurwitz_tropical.permutations import count_factorizations
from hurwitz_tropical.tropical import (
    VertexTerm,
    _hurwitz_streams,
    _ordering_weight,
    concentration_check,
    covers,
    expand_M,
    gw_tropical,
    hurwitz_tropical,
    wick_sum,
)

VARIANTS = ("monotone", "strict")


def three_ways(q):
    perm = count_factorizations(q.genus, q.mu, q.nu, q.variant, q.connected).normalized
    return hurwitz_fock(q), perm, hurwitz_tropical(q)


def hurwitz_grid(max_d=5, max_m=5):
    for d in range(1, max_d + 1):
        for mu in partitions(d):
            for nu in partitions(d):
                for g in range(0, max_m // 2 + 2):
                    for v in VARIANTS:
                        for conn in (True, False):
                            q = HurwitzQuery(v, g, mu, nu, conn)
                            if 0 <= q.m <= max_m:
                                yield q


def gw_grid(max_d=4, max_n=3, max_k=6):
    for d in range(1, max_d + 1):
        for mu in partitions(d):
            for nu in partitions(d):
                for n in range(0, max_n + 1):
                    for ks in combinations_with_replacement(range(max_k + 1), n):
                        if sum(ks) > max_k:
                            continue
                        q = DescendantQuery(mu, nu, ks)
                        if q.genus is not None:
                            yield q


def test_criterion_01_anchor_one(criterion):
    t = time.perf_counter()
    q = HurwitzQuery("monotone", 0, (2, 1), (3,))
    values = three_ways(q)
    elapsed = time.perf_counter() - t
    criterion(1, "h(0;(2,1),(3)) = 1 by all three methods", values == (1, 1, 1) and elapsed < 1, f"{elapsed:.3f}s")


def test_criterion_02_anchor_two(criterion):
    t = time.perf_counter()
    q = HurwitzQuery("monotone", 0, (3, 1), (3, 1))
    values = three_ways(q)
    weights = sorted(c.weight for c in covers(q))
    elapsed = time.perf_counter() - t
    ok = values == (4, 4, 4) and weights == [1, 1, 2] and elapsed < 5
    criterion(2, "h(0;(3,1),(3,1)) = 4, covers weigh 2+1+1", ok, f"{elapsed:.3f}s")


def test_criterion_03_triple_oracle_grid(criterion):
    t = time.perf_counter()
    rows = bad = 0
    for q in hurwitz_grid():
        rows += 1
        a, b, c = three_ways(q)
        if not a == b == c:
            bad += 1
    elapsed = time.perf_counter() - t
    criterion(3, "fock = perm = tropical on d <= 5, m <= 5", bad == 0 and elapsed < 600, f"{rows} rows, {bad} mismatches, {elapsed:.1f}s")


def test_criterion_04_c_coefficients(criterion):
    ok = (c_coeff(-1), c_coeff(1), c_coeff(3)) == (1, Fraction(-1, 24), Fraction(7, 5760))
    for m in range(1, 9):
        closed = -Fraction(2 ** (2 * m - 1) - 1, 2 ** (2 * m - 1)) * bernoulli(2 * m) / factorial(2 * m)
        inverse = S_series(2 * m).inverse()[2 * m]
        ok &= c_coeff(2 * m - 1) == closed == inverse
    criterion(4, "c-coefficients: values, Bernoulli closed form, series inverse (m <= 8)", ok)


def test_criterion_05_pairing(criterion):
    checked = bad = 0
    for a in range(0, 7):
        for b in range(0, 7):
            for mu in partitions(a):
                for nu in partitions(b):
                    checked += 1
                    expected = aut_order(mu) * prod(mu) if mu == nu else 0
                    if wick_sum(mu, nu, []).at_one() != expected:
                        bad += 1
    criterion(5, "pairing identity with no internal vertices, |mu|,|nu| <= 6", bad == 0, f"{checked} pairs")


def test_criterion_06_lascoux_thibon(criterion):
    ok = True
    count = 0
    for d in range(0, 9):
        for lam in partitions(d):
            count += 1
            cr = contents(lam)
            ok &= power_sum(1, cr) == f_eigenvalue(2, lam)
            ok &= Fraction(power_sum(2, cr), 2) == f_eigenvalue(3, lam) - f_eigenvalue(1, lam) / 24
    criterion(6, "content eigenvalues of F_2 and F_3 - F_1/24 for d <= 8", ok, f"{count} partitions")


def test_criterion_07_gw_cross_check(criterion):
    t = time.perf_counter()
    ok = gw_fock(DescendantQuery((1,), (1,), (0,))) == 1 == gw_tropical(DescendantQuery((1,), (1,), (0,)))
    rows = bad = 0
    for q in gw_grid():
        rows += 1
        if gw_tropical(q) != gw_fock(q):
            bad += 1
    elapsed = time.perf_counter() - t
    ok &= bad == 0 and elapsed < 600
    criterion(7, "descendants: tropical at u = 1 equals fock, d <= 4, n <= 3, sum k <= 6", ok, f"{rows} queries, {bad} mismatches, {elapsed:.1f}s")


def test_criterion_08_concentration(criterion):
    rows = failed = violations = 0
    for q in gw_grid():
        rows += 1
        r = concentration_check(q)
        violations += len(r.violations)
        if not r.passed:
            failed += 1
    criterion(8, "u-polynomial concentrated at K0, per-summand too", failed == 0, f"{rows} queries, {violations} violating summands")


def test_criterion_09_sign_discriminator(criterion):
    q = HurwitzQuery("monotone", 1, (1,), (1,))
    truth = count_factorizations(1, (1,), (1,), "monotone").normalized

    def flipped(l):
        return tuple(t.with_coeff(-t.coeff) if t.g2 % 2 else t for t in _hurwitz_streams("monotone", l, 1))

    uses_g2 = any(t.g2 == 1 for lam in partitions(q.m) for p in lam for t in _hurwitz_streams("monotone", p, 1))
    flipped_value = sum(
        (_ordering_weight(lam) * wick_sum((1,), (1,), [flipped(p) for p in lam], connected=True).at_one() for lam in partitions(q.m)),
        Fraction(0),
    )
    ok = uses_g2 and hurwitz_tropical(q) == truth and flipped_value != truth
    criterion(
        9,
        "g = 1, d = 1: c-convention matches brute force, flipped sign does not",
        ok,
        f"brute force {truth}, c-form {hurwitz_tropical(q)}, flipped {flipped_value}",
    )


def test_criterion_10_property_suites(criterion):
    ok = True
    # Newton consistency against monomial expansion
    for xs in ([1, 2], [0, 1, -1], [2, -3, 5, 1], [1, 1, 1]):
        for m in range(0, 5):
            h = sum(prod(c) for c in combinations_with_replacement(xs, m))
            e = sum(prod(c) for c in combinations(xs, m))
            ok &= complete_homogeneous(m, xs) == h and elementary_symmetric(m, xs) == e
    # orthogonality
    for d in range(1, 7):
        parts = list(partitions(d))
        for lam in parts:
            for rho in parts:
                s = sum(Fraction(character(lam, mu) * character(rho, mu), z_order(mu)) for mu in parts)
                ok &= s == (lam == rho)
    # vanishing lemma
    for mu, nu, xm, xp in [((2,), (2,), (2,), (1, 1)), ((1, 1), (2,), (1,), (1,)), ((3,), (2, 1), (2,), (2,))]:
        pos, neg = Counter(mu) + Counter(xp), Counter(nu) + Counter(xm)
        if pos != neg:
            ok &= wick_sum(mu, nu, [[VertexTerm(Fraction(1), xm, xp)]]).is_zero()
    # linked cluster
    for d in range(1, 5):
        streams = lambda ex, d=d: [_hurwitz_streams("monotone", p, d) for p in ex]
        for mu in partitions(d):
            for nu in partitions(d):
                for lam in [(1,), (2,), (1, 1)]:
                    direct = wick_sum(mu, nu, streams(lam), connected=True).at_one()
                    ev = lambda a, b, ex: wick_sum(a, b, streams(ex)).at_one()
                    ok &= direct == connect(ev, mu, nu, lam)
        for mu in partitions(min(d, 3)):
            for nu in partitions(min(d, 3)):
                ks = (0, 1)
                ms = lambda ex, d=min(d, 3): [expand_M(k, d) for k in ex]
                direct = wick_sum(mu, nu, ms(ks), connected=True)
                via = connect(lambda a, b, ex: wick_sum(a, b, ms(ex)), mu, nu, ks,
                              mul=lambda x, y: x * y, zero=Poly(), allow_empty_ends=True)
                ok &= direct == via
    # Euler / Riemann-Hurwitz on every enumerated connected cover
    n_covers = 0
    for q in hurwitz_grid(max_d=4, max_m=4):
        if not q.connected:
            continue
        for c in covers(q):
            n_covers += 1
            ok &= c.genus == q.genus and sum(c.lambda_parts) == q.m
    criterion(10, "Newton, orthogonality, vanishing, linked cluster, Euler", ok, f"{n_covers} covers checked")

