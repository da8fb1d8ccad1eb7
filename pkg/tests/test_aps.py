import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rvdw.aps import (AP, DomainError, ap_count, ap_degree, ap_degree_at, ap_from_elements,
                      ap_intersection, ap_intersection_bound, ap_residues_mod, aps_through_points,
                      count_common_cover_pairs, enumerate_aps, residue_period)

from oracles import brute_aps, common_cover_pairs_exhaustive


@pytest.mark.parametrize("q", [3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 9, 17, 40, 73])
def test_count_and_enumeration_match_brute_force(n, q):
    want = brute_aps(n, q)
    got = [ap.elements() for ap in enumerate_aps(n, q)]
    assert got == want
    assert ap_count(n, q) == len(want)


def test_small_counts_by_hand():
    # 3-APs of [5]: 123 234 345 135
    assert ap_count(5, 3) == 4
    assert ap_count(9, 3) == 16
    assert ap_count(2, 3) == 0


@pytest.mark.parametrize("n,q", [(20, 3), (31, 4), (26, 5)])
def test_degree_formula(n, q):
    aps = brute_aps(n, q)
    for k in range(1, n + 1):
        total = 0
        for i in range(1, q + 1):
            want = sum(1 for t in aps if t[i - 1] == k)
            assert ap_degree_at(k, i, n, q) == want
            total += want
        assert ap_degree(k, n, q) == total


def test_degree_rejects_outside_vertex():
    with pytest.raises(DomainError):
        ap_degree(0, 10, 3)
    with pytest.raises(DomainError):
        ap_degree(11, 10, 3)


def test_progression_validation():
    with pytest.raises(DomainError):
        AP(0, 1, 3)
    with pytest.raises(DomainError):
        AP(1, 0, 3)
    with pytest.raises(DomainError):
        ap_from_elements([1, 2, 4])
    assert ap_from_elements([7, 1, 4]) == AP(1, 3, 3)
    assert 7 in AP(1, 3, 3) and 6 not in AP(1, 3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60), st.sampled_from([3, 4, 5]))
def test_aps_through_two_points(x, y, q):
    n = 60
    if x == y:
        return
    got = aps_through_points({x, y}, n, q)
    want = [t for t in brute_aps(n, q) if x in t and y in t]
    assert sorted(a.elements() for a in got) == sorted(want)
    assert len(got) <= q * q


def test_aps_through_one_point():
    n, q = 30, 4
    for k in range(1, n + 1):
        want = sorted(t for t in brute_aps(n, q) if k in t)
        assert sorted(a.elements() for a in aps_through_points([k], n, q)) == want


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 30), st.integers(1, 12), st.integers(1, 30), st.integers(1, 12),
       st.sampled_from([3, 4, 5, 6]))
def test_intersection_bound(f1, d1, f2, d2, q):
    if d1 == d2:
        return
    a, b = AP(f1, d1, q), AP(f2, d2, q)
    inter = ap_intersection(a, b)
    assert inter == set(a.elements()) & set(b.elements())
    assert len(inter) <= ap_intersection_bound(q, d1, d2)
    assert ap_intersection_bound(q, d1, d2) == math.ceil(q * math.gcd(d1, d2) / max(d1, d2))


def test_intersection_bound_is_attained():
    # same start, differences 2 and 4: shares ceil(q/2) terms
    for q in (3, 4, 5, 6, 7):
        assert len(ap_intersection(AP(1, 2, q), AP(1, 4, q))) == ap_intersection_bound(q, 2, 4)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 50), st.integers(1, 20), st.integers(3, 9), st.integers(1, 25))
def test_residues(first, diff, q, t):
    ap = AP(first, diff, q)
    res = ap_residues_mod(ap, t)
    assert len(res) == min(residue_period(diff, t), q)
    if math.gcd(diff, t) == 1:
        assert len(res) == min(t, q)


def test_residues_rejects_bad_modulus():
    with pytest.raises(DomainError):
        ap_residues_mod(AP(1, 1, 3), 0)


@pytest.mark.parametrize("q", [3, 4])
def test_common_cover_pairs_small(q):
    n = 25
    for x in (1, 5, 12, 25):
        for y in (2, 7, 13, 24):
            assert count_common_cover_pairs(x, y, q, n) == common_cover_pairs_exhaustive(x, y, q, n)


def test_common_cover_pairs_rejects_equal_points():
    with pytest.raises(DomainError):
        count_common_cover_pairs(3, 3, 3, 10)
