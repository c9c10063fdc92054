import string

import pytest
from hypothesis import given, strategies as st

from tourdecomp.construct.balance import BalanceRequest, balance_sets, indicator_split


def _count(fam, v):
    return sum(v in T for T in fam.sets)


def test_abcd_example():
    V = tuple("abcd")
    req = BalanceRequest(V, {"a": 1, "b": 0, "c": 1, "d": 0}, 1, 1,
                         ("a", "c"), ("b", "d"))
    fam = balance_sets(req)
    assert fam.violations() == []
    assert fam.sets == (frozenset("abc"), frozenset("acd"))
    assert [_count(fam, v) for v in V] == [2, 1, 2, 1]


def test_abcd_two_layers():
    V = tuple("abcd")
    req = BalanceRequest(V, {"a": 2, "b": 0, "c": 1, "d": 0}, 1, 2,
                         ("a", "c", "c", "a"), ("b", "d", "d", "b"))
    fam = balance_sets(req)
    assert fam.sets == tuple(map(frozenset, ["abc", "acd", "acd", "ab"]))
    assert [_count(fam, v) for v in V] == [4, 2, 3, 2]


def test_eight_elements_anchor_clash():
    V = tuple(range(8))
    f = {v: v % 3 for v in V}  # max 2
    # the anchor quadruple for i is x_i, y_i, x_{4+i}, y_{4+i}
    with pytest.raises(ValueError, match="i = 0"):
        BalanceRequest(V, f, 2, 2, (0, 2, 4, 6, 1, 3, 5, 7), (1, 3, 5, 7, 0, 2, 4, 6))


def test_eight_elements_valid():
    V = tuple(range(8))
    f = {v: v % 3 for v in V}
    x = (0, 2, 4, 6, 4, 6, 0, 2)
    y = (1, 3, 5, 7, 5, 7, 1, 3)
    fam = balance_sets(BalanceRequest(V, f, 2, 2, x, y))
    assert fam.violations() == []
    assert fam.size_bound() == 4
    for v in V:
        assert _count(fam, v) == f[v] + 3 * 2


@pytest.mark.parametrize("bad,msg", [
    (dict(t=0), "positive"),
    (dict(m=3), "maximum"),
    (dict(f={"a": 1, "b": 0, "c": 1}), "exactly"),
    (dict(x=("a", "a"), y=("b", "d")), "i = 0"),
    (dict(x=("a",), y=("b",)), "anchor pairs"),
])
def test_request_validation(bad, msg):
    base = dict(elements=tuple("abcd"), f={"a": 1, "b": 0, "c": 1, "d": 0}, t=1, m=1,
                x=("a", "c"), y=("b", "d"))
    base.update(bad)
    with pytest.raises(ValueError, match=msg):
        BalanceRequest(**base)


def test_t_too_large():
    V = tuple("abcde")
    with pytest.raises(ValueError, match="2t"):
        BalanceRequest(V, dict.fromkeys(V, 1), 3, 1, tuple("abcabc"), tuple("deedde"))


def test_indicator_split():
    f = {"a": 2, "b": 1, "c": 0, "d": 2}
    us = indicator_split(f, "abcd", 2)
    for v, k in f.items():
        assert sum(v in U for U in us) == k
    assert sorted(len(U) for U in us) == [2, 3]


@st.composite
def requests(draw):
    t = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    n = draw(st.integers(max(4, 2 * t, t * m), 14))
    V = tuple(string.ascii_lowercase[:n])
    vals = draw(st.lists(st.integers(0, m), min_size=n, max_size=n))
    vals[draw(st.integers(0, n - 1))] = m
    k = t * m
    x, y = [None] * (2 * k), [None] * (2 * k)
    for i in range(k):
        q = draw(st.permutations(V))[:4]
        x[i], y[i], x[k + i], y[k + i] = q
    return BalanceRequest(V, dict(zip(V, vals)), t, m, tuple(x), tuple(y))


@given(requests())
def test_balance_property(req):
    fam = balance_sets(req)
    assert fam.violations() == []
    want = (2 * req.t - 1) * req.m
    for v in req.elements:
        assert _count(fam, v) == req.f[v] + want
    for i, T in enumerate(fam.sets):
        assert {req.x[i], req.y[i]} <= T
        assert len(T) * req.t >= (req.t - 1) * req.n
