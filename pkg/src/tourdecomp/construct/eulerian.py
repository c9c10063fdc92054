"""Eulerian splitting, long cycles, greedy cycle decompositions and
cycle representatives."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..digraph import Cycle, Digraph, cycle_edges, find_cycle
from ..errors import BudgetExceeded, CertificationError, InfeasibleCapsError, NotEulerianError
from ..flow import BipartiteGraph, hall_k_matching

log = logging.getLogger(__name__)


def split_eulerian(D: Digraph) -> tuple[Digraph, Digraph]:
    """Split E(D) into an Eulerian part and an acyclic remainder.

    Cycles are peeled off one at a time (DFS from the lowest vertex, first back
    edge closes the cycle) until none is left.
    """
    cycles = peel_cycles(D)
    euler = Digraph(D.n, (e for c in cycles for e in cycle_edges(c)))
    rest = D.remove_edges(euler.edges)
    return euler, rest


def peel_cycles(D: Digraph) -> list[Cycle]:
    cycles = []
    residual = D
    while True:
        c = find_cycle(residual)
        if c is None:
            return cycles
        cycles.append(c)
        residual = residual.remove_edges(cycle_edges(c))


def cycle_length_bound(n: int, m: int) -> Fraction:
    """1 + max(m^2 / 24n^3, floor(sqrt(m/n))), exact rational."""
    if n <= 0:
        raise ValueError("n must be positive")
    return 1 + max(Fraction(m * m, 24 * n**3), Fraction(math.isqrt(m // n)))


def cycle_count_bound(n: int) -> float:
    """50 n^(4/3) ln n."""
    return 50 * n ** (4 / 3) * math.log(n) if n > 1 else 0.0


def _longest_cycle(D: Digraph, node_budget: int | None) -> Cycle:
    """Longest simple cycle; with a budget, the longest one seen so far.

    The budget counts search nodes per start vertex, so a heuristic run
    still looks at cycles through every vertex.
    """
    best: list[int] = []
    verts = D.non_isolated()
    for idx, s in enumerate(verts):
        if len(verts) - idx <= len(best):
            break
        nodes = 0
        allowed = {v for v in verts if v > s}
        trail = [s]
        on = {s}

        def dfs(u: int) -> None:
            nonlocal best, nodes
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise BudgetExceeded
            for w in D.out_neighbors(u):
                if w == s and len(trail) > len(best):
                    best = list(trail)
                elif w in allowed and w not in on:
                    if len(trail) + len(allowed) - (len(on) - 1) <= len(best):
                        continue
                    trail.append(w)
                    on.add(w)
                    dfs(w)
                    on.discard(w)
                    trail.pop()

        try:
            dfs(s)
        except BudgetExceeded:
            pass
    return tuple(best)


EXACT_LIMIT = 14


def long_cycle(D: Digraph, mode: str = "exact", *, heuristic_budget: int = 2000) -> Cycle:
    """A cycle of length at least the Eulerian long-cycle bound.

    ``exact`` returns a longest cycle. ``heuristic`` runs the same search under
    a node budget and falls back to the exact search when what it found is
    below the bound.
    """
    if D.m == 0:
        raise ValueError("long_cycle needs a non-empty digraph")
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    bound = cycle_length_bound(D.n, D.m)
    if mode == "heuristic":
        cyc = _longest_cycle(D, heuristic_budget)
        if len(cyc) < bound:
            log.info("heuristic cycle of length %d below bound %s; exact fallback", len(cyc), bound)
            cyc = _longest_cycle(D, None)
    else:
        cyc = _longest_cycle(D, None)
    if len(cyc) < bound:
        raise CertificationError(f"longest cycle {len(cyc)} below bound {bound}")
    return cyc


def greedy_cycle_decomposition(D: Digraph, mode: str = "auto") -> list[Cycle]:
    """Repeatedly remove a long cycle from an Eulerian digraph."""
    for v in range(D.n):
        if D.out_degree(v) != D.in_degree(v):
            raise NotEulerianError(v, D.out_degree(v) - D.in_degree(v))
    if mode == "auto":
        mode = "exact" if len(D.non_isolated()) <= EXACT_LIMIT else "heuristic"
    cycles: list[Cycle] = []
    residual = D
    while residual.m:
        c = long_cycle(residual, mode)
        cycles.append(c)
        residual = residual.remove_edges(cycle_edges(c))
    if D.m:
        if 3 * len(cycles) > D.m and D.is_oriented:
            raise CertificationError(f"{len(cycles)} cycles exceed m/3 = {D.m / 3}")
        if len(cycles) > cycle_count_bound(D.n):
            raise CertificationError(f"{len(cycles)} cycles exceed 50 n^(4/3) ln n")
    return cycles


# -- representatives --------------------------------------------------------------


@dataclass(frozen=True)
class CycleWithReps:
    cycle: Cycle
    reps: tuple[int, ...]  # in cycle order

    def intervals(self) -> list[tuple[int, ...]]:
        """Vertex sequences from each representative to the next (inclusive)."""
        k = len(self.cycle)
        pos = [self.cycle.index(x) for x in self.reps]
        out = []
        for i, p in enumerate(pos):
            q = pos[(i + 1) % len(pos)]
            steps = (q - p) % k or k
            out.append(tuple(self.cycle[(p + j) % k] for j in range(steps + 1)))
        return out

    def max_gap(self) -> int:
        return max(len(iv) - 1 for iv in self.intervals())


def _caps(multiplicity_cap) -> dict[int, int]:
    if isinstance(multiplicity_cap, int):
        return _UniformCaps(multiplicity_cap)
    if isinstance(multiplicity_cap, Mapping):
        return dict(multiplicity_cap)
    return dict(enumerate(multiplicity_cap))


class _UniformCaps(dict):
    def __init__(self, value: int):
        super().__init__()
        self.value = value

    def __missing__(self, key):
        return self.value


def _split_lengths(length: int, interval_cap: int) -> list[int]:
    """Interval lengths (edges) covering a long cycle, as few as possible."""
    hi = interval_cap // 2
    r = -(-length // hi)
    q, extra = divmod(length, r)
    return [q + 1] * extra + [q] * (r - extra)


def assign_representatives(
    cycles: Sequence[Cycle],
    interval_cap: int,
    multiplicity_cap: int | Mapping[int, int] | Sequence[int],
) -> list[CycleWithReps]:
    """Choose at least two representatives per cycle.

    Cycles longer than ``interval_cap`` are cut into intervals of at most
    ``interval_cap // 2`` edges starting from their lowest vertex and get one
    representative per interval, picked greedily (least used vertex first).
    Shorter cycles get two representatives from two rounds of capacitated
    Hall matchings. No vertex is used more often than its cap.
    """
    if interval_cap < 2:
        raise ValueError("interval_cap must be at least 2")
    caps = _caps(multiplicity_cap)
    used: dict[int, int] = {}
    reps: dict[int, list[int]] = {}

    def room(v: int) -> int:
        return caps[v] - used.get(v, 0)

    short = []
    for i, c in enumerate(cycles):
        if len(c) <= interval_cap:
            short.append(i)
            continue
        start = c.index(min(c))
        rot = c[start:] + c[:start]
        chosen = []
        pos = 0
        for ln in _split_lengths(len(rot), interval_cap):
            block = [v for v in rot[pos:pos + ln] if room(v) > 0]
            if not block:
                raise InfeasibleCapsError(
                    f"no vertex of interval {rot[pos:pos + ln]} on cycle {i} has capacity left",
                    witness=(i,),
                )
            v = min(block, key=lambda x: (used.get(x, 0), x))
            used[v] = used.get(v, 0) + 1
            chosen.append(v)
            pos += ln
        reps[i] = chosen

    if short:
        verts = sorted({v for i in short for v in cycles[i]})
        col = {v: j for j, v in enumerate(verts)}
        first: dict[int, int] = {}
        for rnd in range(2):
            edges = [
                (a, col[v])
                for a, i in enumerate(short)
                for v in cycles[i]
                if rnd == 0 or v != first[i]
            ]
            G = BipartiteGraph.from_edges(len(short), len(verts), edges)
            res = hall_k_matching(G, [max(room(v), 0) for v in verts])
            if not res.ok:
                bad = sorted(short[a] for a in res.witness)
                raise InfeasibleCapsError(
                    f"multiplicity caps too small for short cycles {bad}", witness=bad
                )
            for a, b in res.assignment.items():
                v = verts[b]
                used[v] = used.get(v, 0) + 1
                if rnd == 0:
                    first[short[a]] = v
                else:
                    reps[short[a]] = [first[short[a]], v]

    out = []
    for i, c in enumerate(cycles):
        ordered = sorted(reps[i], key=c.index)
        out.append(CycleWithReps(tuple(c), tuple(ordered)))
    for v, k in used.items():
        assert k <= caps[v]
    return out
