import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import digraphs, eulerian_digraphs
from oracles import longest_cycle_length
from tourdecomp.construct.eulerian import (
    CycleWithReps,
    assign_representatives,
    cycle_count_bound,
    cycle_length_bound,
    greedy_cycle_decomposition,
    long_cycle,
    split_eulerian,
)
from tourdecomp.digraph import Digraph, cycle_edges, directed_cycle, is_cycle
from tourdecomp.errors import InfeasibleCapsError, NotEulerianError

ROT5 = Digraph(5, [(i, (i + k) % 5) for i in range(5) for k in (1, 2)])
TWO_TRIANGLES = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
BOWTIE = Digraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


class TestSplit:
    def test_c3(self, c3):
        E, R = split_eulerian(c3)
        assert E == c3 and R.m == 0

    def test_tt4(self, tt4):
        E, R = split_eulerian(tt4)
        assert E.m == 0 and R == tt4

    def test_triangle_with_tail(self):
        E, R = split_eulerian(Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)]))
        assert E.edges == {(0, 1), (1, 2), (2, 0)} and R.edges == {(0, 3)}


@given(digraphs(max_n=8, oriented=False))
def test_split_properties(D):
    E, R = split_eulerian(D)
    assert E.edges | R.edges == D.edges and not E.edges & R.edges
    assert E.is_eulerian and R.is_acyclic


class TestBound:
    def test_values(self):
        assert cycle_length_bound(3, 3) == 2
        assert cycle_length_bound(6, 6) == 2
        assert cycle_length_bound(5, 10) == 2
        assert cycle_length_bound(2, 96) == 1 + Fraction(96 * 96, 24 * 8)

    def test_count_bound(self):
        assert cycle_count_bound(1) == 0
        assert cycle_count_bound(8) == pytest.approx(50 * 16 * math.log(8))


class TestLongCycle:
    def test_c3(self, c3):
        assert len(long_cycle(c3)) == 3

    def test_two_triangles(self):
        assert len(long_cycle(TWO_TRIANGLES)) == 3

    def test_rotational_k5(self):
        cyc = long_cycle(ROT5)
        assert len(cyc) == 5 and is_cycle(ROT5, cyc)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            long_cycle(Digraph(3))

    @given(eulerian_digraphs(max_n=8), st.sampled_from(["exact", "heuristic"]))
    def test_meets_bound(self, D, mode):
        if D.m == 0:
            return
        cyc = long_cycle(D, mode)
        assert is_cycle(D, cyc)
        assert len(cyc) >= cycle_length_bound(D.n, D.m)
        if mode == "exact":
            assert len(cyc) == longest_cycle_length(D.n, D.edges)


class TestGreedy:
    def test_c3(self, c3):
        assert greedy_cycle_decomposition(c3) == [(0, 1, 2)]

    def test_bowtie(self):
        cycles = greedy_cycle_decomposition(BOWTIE)
        assert sorted(sorted(c) for c in cycles) == [[0, 1, 2], [0, 3, 4]]

    def test_rotational_k5(self):
        cycles = greedy_cycle_decomposition(ROT5)
        assert len(cycles[0]) == 5 and len(cycles) <= 3

    def test_not_eulerian(self, tt4):
        with pytest.raises(NotEulerianError):
            greedy_cycle_decomposition(tt4)

    @given(eulerian_digraphs(max_n=9))
    def test_partition_and_count(self, D):
        cycles = greedy_cycle_decomposition(D)
        edges = [e for c in cycles for e in cycle_edges(c)]
        assert sorted(edges) == D.sorted_edges()
        assert all(is_cycle(D, c) for c in cycles)
        if D.m:
            assert 3 * len(cycles) <= D.m
            assert len(cycles) <= cycle_count_bound(D.n)


class TestRepresentatives:
    def test_c3(self):
        (cw,) = assign_representatives([(0, 1, 2)], 10, 2)
        assert len(cw.reps) == 2 and set(cw.reps) <= {0, 1, 2}

    def test_disjoint_triangles_distinct(self):
        res = assign_representatives([(0, 1, 2), (3, 4, 5)], 10, 1)
        reps = [v for cw in res for v in cw.reps]
        assert len(reps) == 4 == len(set(reps))

    def test_long_cycle_intervals(self):
        (cw,) = assign_representatives([tuple(range(9))], 4, 3)
        assert len(cw.reps) >= 3 and cw.max_gap() <= 4
        assert sum(len(iv) - 1 for iv in cw.intervals()) == 9

    def test_caps_too_small(self):
        with pytest.raises(InfeasibleCapsError) as info:
            assign_representatives([(0, 1, 2)] * 2, 10, {0: 1, 1: 1, 2: 1})
        assert info.value.witness == (0, 1)

    def test_intervals(self):
        cw = CycleWithReps((0, 1, 2, 3, 4), (1, 3))
        assert cw.intervals() == [(1, 2, 3), (3, 4, 0, 1)]
        assert cw.max_gap() == 3


@given(eulerian_digraphs(max_n=9), st.integers(2, 6), st.integers(1, 4))
def test_representative_invariants(D, cap, mult):
    cycles = greedy_cycle_decomposition(D)
    try:
        res = assign_representatives(cycles, cap, mult)
    except InfeasibleCapsError:
        return
    use: dict = {}
    for c, cw in zip(cycles, res):
        assert cw.cycle == c and len(cw.reps) >= 2
        assert len(set(cw.reps)) == len(cw.reps) and set(cw.reps) <= set(c)
        if len(c) > cap:
            assert cw.max_gap() <= cap
        for v in cw.reps:
            use[v] = use.get(v, 0) + 1
    assert max(use.values(), default=0) <= mult


def test_directed_cycle_long():
    C = directed_cycle(12)
    (cw,) = assign_representatives(greedy_cycle_decomposition(C), 6, 1)
    assert cw.max_gap() <= 3
