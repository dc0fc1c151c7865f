from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_tropical.exactcore import c_coeff
from hurwitz_tropical.gwlocal import (
    LocalVertexData,
    hodge_factor,
    one_point_gw,
    one_point_series,
    vertex_multiplicity,
)
from hurwitz_tropical.partitions import aut_order, partitions


def test_one_point_examples():
    assert one_point_gw((1,), (1,), 0) == 1
    assert one_point_gw((), (), 1) == Fraction(-1, 24)
    assert one_point_gw((1,), (1,), 1) == Fraction(1, 24)
    assert one_point_gw((2,), (1, 1), 0) == Fraction(1, 2)


def test_one_point_errors():
    with pytest.raises(ValueError):
        one_point_gw((2,), (1,), 0)
    with pytest.raises(ValueError):
        one_point_gw((1,), (1,), -1)


@pytest.mark.parametrize("g, expected", [(0, 1), (1, Fraction(-1, 24)), (2, Fraction(7, 5760))])
def test_hodge_examples(g, expected):
    assert hodge_factor(g) == expected


@pytest.mark.parametrize("g", range(1, 8))
def test_hodge_is_c_coefficient(g):
    assert hodge_factor(g) == c_coeff(2 * g - 1)


@pytest.mark.parametrize(
    "xp, xm, g1, g2, expected",
    [((3,), (2, 1), 0, 0, 1), ((4,), (3, 1), 0, 0, 1), ((1,), (1,), 1, 0, Fraction(1, 24))],
)
def test_vertex_multiplicity(xp, xm, g1, g2, expected):
    assert vertex_multiplicity(LocalVertexData(xp, xm, g1, g2)) == expected


def test_vertex_multiplicity_rejects_small_lambda():
    with pytest.raises(ValueError):
        vertex_multiplicity(LocalVertexData((1,), (1,), 0, 0))


profiles = st.integers(1, 5).flatmap(
    lambda d: st.tuples(st.sampled_from(list(partitions(d))), st.sampled_from(list(partitions(d))))
)


@settings(max_examples=60, deadline=None)
@given(profiles, st.integers(0, 3))
def test_symmetry_and_genus_zero(pair, g):
    xp, xm = pair
    assert one_point_gw(xp, xm, g) == one_point_gw(xm, xp, g)
    assert one_point_gw(xp, xm, 0) == Fraction(1, aut_order(xp) * aut_order(xm))


@settings(max_examples=40, deadline=None)
@given(profiles)
def test_series_is_even(pair):
    xp, xm = pair
    s = one_point_series(tuple(xp), tuple(xm), 7)
    assert all(s[k] == 0 for k in range(1, 8, 2))
