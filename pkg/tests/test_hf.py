import itertools

import pytest
from hypothesis import given, strategies as st

from zfp import hf
from zfp.hf import EMPTY, hf_set, parse_hf, render

V2 = hf.v_tier(2).elems
V3 = hf.v_tier(3).elems


def small_sets():
    return st.sampled_from(hf.v_tier(4).elems)


def test_basic_constructors():
    assert hf.powerset(EMPTY) is hf_set([EMPTY])
    one = hf.successor(EMPTY)
    assert one is hf.vn(1)
    assert hf.successor(one) is hf_set([EMPTY, one])
    x = hf_set([hf_set([EMPTY]), hf_set([hf_set([EMPTY])])])
    assert hf.big_union(x) is hf_set([EMPTY, hf_set([EMPTY])])


def test_interning_makes_equal_sets_identical():
    a = hf_set([EMPTY, hf.vn(1)])
    b = hf_set([hf.vn(1), EMPTY, EMPTY])
    assert a is b
    assert hash(a) == hash(b)


@given(small_sets(), small_sets())
def test_extensional_canonicity(x, y):
    same_members = all(hf.mem(a, y) for a in x.elems) and all(hf.mem(a, x) for a in y.elems)
    assert (x is y) == same_members


@given(small_sets())
def test_powerset_size(x):
    assert len(hf.powerset(x).elems) == 2 ** len(x.elems)


@given(small_sets(), small_sets())
def test_union_and_subset(x, y):
    u = hf.binary_union(x, y)
    assert hf.subset(x, u) and hf.subset(y, u)
    assert set(u.elems) == set(x.elems) | set(y.elems)


def test_kpair_shapes():
    a = hf.vn(2)
    assert hf.kpair(a, a) is hf_set([hf_set([a])])
    assert hf.singleton(hf.kpair(hf.vn(0), hf.vn(0))) is hf.kpair(hf.vn(1), hf.vn(1))
    for b, c in itertools.product(V3, repeat=2):
        assert hf.mem(hf.singleton(b), hf.kpair(b, c))


def test_kuratowski_characteristic_property_exhaustive():
    for a, b, c, d in itertools.product(V3, repeat=4):
        assert (hf.kpair(a, b) is hf.kpair(c, d)) == (a is c and b is d)


def test_kproj():
    e, one = hf.vn(0), hf.vn(1)
    assert hf.kproj(hf.kpair(e, one)) == (e, one)
    assert hf.kproj(hf_set([EMPTY])) is None
    for a in V3:
        assert hf.kproj(hf.kpair(a, a)) == (a, a)
    for a, b in itertools.product(V3, repeat=2):
        assert hf.kproj(hf.kpair(a, b)) == (a, b)


def test_kproj_rejects_non_pairs_by_brute_force():
    # {{}} is not any kpair(a, b); neither are the other non-pairs of V_3
    pairs = {hf.kpair(a, b) for a in V3 for b in V3}
    for q in hf.v_tier(4).elems:
        if q not in pairs and hf.rank(q) <= 3:
            assert hf.kproj(q) is None, render(q)


def test_kpi_criteria_agree_with_construction():
    for a, b in itertools.product(V3, repeat=2):
        q = hf.kpair(a, b)
        assert hf.kpi1(a, q) and hf.kpi2(b, q)
        for c in V3:
            assert hf.kpi1(c, q) == (c is a)
            assert hf.kpi2(c, q) == (c is b)


def test_cartesian():
    one = hf_set([EMPTY])
    assert hf.cartesian(one, one) is hf_set([hf.kpair(EMPTY, EMPTY)])
    assert hf.cartesian(one, one) is parse_hf("{{{{}}}}")


def _nested_replacement_product(x, y):
    # union of { {<c,d> | d in y} | c in x }
    rows = [hf_set(hf.kpair(c, d) for d in y.elems) for c in x.elems]
    return hf.big_union(hf_set(rows))


@pytest.mark.parametrize("x", V3)
def test_cartesian_matches_nested_replacement(x):
    # all x, y that are subsets of V_2
    for y in V3:
        assert hf.cartesian(x, y) is _nested_replacement_product(x, y)


def test_numerals_and_ordinals():
    assert hf.is_ordinal(hf.vn(3))
    assert not hf.is_ordinal(hf_set([hf_set([EMPTY])]))
    assert not hf.is_transitive(hf_set([hf_set([EMPTY])]))
    for n in range(5):
        assert len(hf.vn(n).elems) == n


def test_v_tiers():
    assert [len(hf.v_tier(n).elems) for n in range(5)] == [0, 1, 2, 4, 16]
    with pytest.raises(hf.DepthError):
        hf.v_tier(6)


@given(small_sets())
def test_render_parse_round_trip(x):
    assert parse_hf(render(x)) is x


def test_render():
    assert render(hf.vn(2)) == "{{},{{}}}"
    with pytest.raises(ValueError):
        parse_hf("{{}")
