from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from k3walls import bounds
from k3walls.arith import euler_phi
from k3walls.walls import chamber_count, g_sum


@pytest.mark.parametrize("m,r,d,count", [(7, 3, 2, 1), (6, 2, 3, 0), (5, 1, 2, 1)])
def test_solution_count_examples(m, r, d, count):
    assert bounds.solution_count(m, r, d) == count
    assert bounds.check_solution_count(m, r, d)


@pytest.mark.parametrize("m", range(2, 25))
def test_solution_count_case_split(m):
    for r in range(1, m):
        for d in range(1, m):
            assert bounds.check_solution_count(m, r, d)


def test_solution_count_validation():
    with pytest.raises(ValueError):
        bounds.solution_count(5, 5, 1)


def test_s_set_small():
    assert list(bounds.s_set(3, 1)) == [(1, 0), (1, 1), (2, 0), (2, 1)]


@pytest.mark.parametrize("m,r", [(3, 1), (5, 2), (7, 3), (11, 4), (20, 9)])
def test_counting_identity(m, r):
    assert bounds.check_counting_identity(m, r)


def test_counting_identity_hand_case():
    terms = [bounds.f_count_int(n, 3, s, 1) for n, s in bounds.s_set(3, 1)]
    assert terms == [2, 0, 0, 2]
    assert sum(terms) == g_sum(3, 1) == 4


def test_counting_identity_validation():
    with pytest.raises(ValueError):
        bounds.check_counting_identity(6, 2)


@pytest.mark.parametrize("m", range(2, 40))
def test_sum_bound(m):
    res = bounds.check_sum_bound(m)
    assert res.holds and bool(res)
    assert res.h_sum >= euler_phi(m)


@st.composite
def quadruple(draw, hi=60):
    m = draw(st.integers(2, hi))
    n = draw(st.integers(1, m - 1).filter(lambda n: gcd(n, m) == 1))
    r = draw(st.integers(1, m - 1))
    s = draw(st.integers(0, r).filter(lambda s: gcd(s, r) == 1))
    return n, m, s, r


@settings(max_examples=300)
@given(quadruple())
def test_f_and_h_properties(q):
    n, m, s, r = q
    assert bounds.check_f_symmetry(n, m, s, r)
    assert bounds.check_f_vanishing_and_floor(n, m, s, r)
    assert bounds.check_h_above_f(n, m, s, r)
    assert bounds.check_gcd_monotone(n, m, s, r)


@settings(max_examples=60)
@given(st.integers(2, 80), st.data())
def test_h_below_f_sum(m, data):
    n = data.draw(st.integers(1, m - 1).filter(lambda n: gcd(n, m) == 1))
    assert chamber_count(Fraction(n, m)) <= bounds.h_upper_from_f(n, m)


@pytest.mark.parametrize("m,h_min,h_sum", [(2, 2, 2), (5, 5, 22), (7, 7, 42)])
def test_h_stats_examples(m, h_min, h_sum):
    row = bounds.h_stats(m)
    assert (row.h_min, row.h_sum) == (h_min, h_sum)
    assert row.phi_m == euler_phi(m)
    assert row.h_ave == Fraction(h_sum, row.phi_m)


def test_h_stats_range_parallel_matches_serial():
    serial = bounds.h_stats_range(2, 40)
    parallel = bounds.h_stats_range(2, 40, jobs=2)
    assert serial == parallel
    assert [r.m for r in serial] == list(range(2, 41))


def test_stats_csv():
    text = bounds.stats_rows_csv(bounds.h_stats_range(2, 3))
    lines = text.split("\n")
    assert lines[0] == "m,phi,h_min,h_ave_num,h_ave_den,h_sum,ratio"
    assert lines[1].startswith("2,1,2,2,1,2,")
    assert text.endswith("\n") and "\r" not in text


def test_stats_validation():
    with pytest.raises(ValueError):
        bounds.h_stats(1)
    with pytest.raises(ValueError):
        bounds.h_stats_range(5, 4)
