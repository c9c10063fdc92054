"""Max-flow primitives: Hall k-matchings, bipartite matchings, Menger fans.

Everything runs on one small Edmonds-Karp network (BFS augmenting paths),
which is plenty at the sizes this package targets.

Separator convention
--------------------
Menger-type quantities are computed towards a target set ``B`` whose
vertices are never cut (for a fan, ``B = {v}`` and ``v`` is the shared end).
Vertices in both ``A`` and ``B`` are trivial paths and count once each.

* ``shared_sources=True`` (default): sources in ``A`` are uncapacitated, so
  paths may share their first vertex. A separator is then a set of internal
  vertices (outside ``A`` and ``B``) plus the direct ``A -> B`` edges, each
  direct edge counting one.
* ``shared_sources=False``: every vertex outside ``B`` has capacity one, so
  paths are vertex-disjoint except at their end in ``B``; separators may
  contain ``A`` vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .digraph import Digraph, Path

_INF = 1 << 40


class _Network:
    def __init__(self, size: int):
        self.size = size
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        to, cap, adj = self.to, self.cap, self.adj
        while True:
            prev = [-1] * self.size
            prev[s] = -2
            q = deque([s])
            while q and prev[t] == -1:
                u = q.popleft()
                for e in adj[u]:
                    w = to[e]
                    if cap[e] > 0 and prev[w] == -1:
                        prev[w] = e
                        q.append(w)
            if prev[t] == -1:
                return total
            push, w = _INF, t
            while w != s:
                e = prev[w]
                push = min(push, cap[e])
                w = to[e ^ 1]
            w = t
            while w != s:
                e = prev[w]
                cap[e] -= push
                cap[e ^ 1] += push
                w = to[e ^ 1]
            total += push

    def flow_on(self, e: int) -> int:
        return self.cap[e ^ 1]

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.adj[u]:
                if self.cap[e] > 0 and self.to[e] not in seen:
                    seen.add(self.to[e])
                    q.append(self.to[e])
        return seen


# -- bipartite ---------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    a_size: int
    b_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate bipartite edge")
        for a, b in self.edges:
            if not (0 <= a < self.a_size and 0 <= b < self.b_size):
                raise ValueError(f"edge {(a, b)} out of range")

    @classmethod
    def from_edges(cls, a_size: int, b_size: int, edges: Iterable[tuple[int, int]]):
        return cls(a_size, b_size, tuple(sorted(set(edges))))

    def neighbors_a(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.a_size)]
        for a, b in self.edges:
            nb[a].append(b)
        return nb

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph.from_edges(self.b_size, self.a_size, ((b, a) for a, b in self.edges))

    def to_text(self) -> str:
        rows = [f"{self.a_size} {self.b_size} {len(self.edges)}"]
        rows += [f"{a} {b}" for a, b in sorted(self.edges)]
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BipartiteGraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        a_size, b_size, m = map(int, rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise ValueError(f"header declares {m} edges but {len(edges)} follow")
        return cls.from_edges(a_size, b_size, edges)


@dataclass(frozen=True)
class HallResult:
    """Either ``assignment`` (a -> b) or a ``witness`` X with k|N(X)| < |X|."""

    assignment: dict[int, int] | None
    witness: frozenset[int] | None

    @property
    def ok(self) -> bool:
        return self.assignment is not None


def _capacities(G: BipartiteGraph, k: int | Sequence[int]) -> list[int]:
    if isinstance(k, int):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        return [k] * G.b_size
    caps = list(k)
    if len(caps) != G.b_size or min(caps, default=0) < 0:
        raise ValueError("per-vertex capacities must be non-negative, one per B vertex")
    return caps


def _matching_network(G: BipartiteGraph, caps: Sequence[int]):
    s, t = G.a_size + G.b_size, G.a_size + G.b_size + 1
    net = _Network(t + 1)
    for a in range(G.a_size):
        net.add(s, a, 1)
    mid = {}
    for a, b in G.edges:
        mid[(a, b)] = net.add(a, G.a_size + b, _INF)
    for b in range(G.b_size):
        if caps[b]:
            net.add(G.a_size + b, t, caps[b])
    value = net.max_flow(s, t)
    assignment = {a: b for (a, b), e in mid.items() if net.flow_on(e) > 0}
    return net, s, value, assignment


def hall_k_matching(G: BipartiteGraph, k: int | Sequence[int]) -> HallResult:
    """Match every a to some b with b receiving at most k (or k[b]) elements."""
    caps = _capacities(G, k)
    net, s, value, assignment = _matching_network(G, caps)
    if value == G.a_size:
        return HallResult(assignment, None)
    # source side of the min cut: sum of caps over N(X) is below |X|
    reach = net.reachable(s)
    X = frozenset(a for a in range(G.a_size) if a in reach)
    return HallResult(None, X)


@dataclass(frozen=True)
class MatchingResult:
    matching: dict[int, int]
    perfect: bool
    witness: frozenset[int] | None  # Hall violator on the deficient side
    witness_side: str | None
    degree_condition: bool  # equal parts and min degree >= n/2

    @property
    def size(self) -> int:
        return len(self.matching)


def perfect_matching(G: BipartiteGraph) -> MatchingResult:
    net, s, value, matching = _matching_network(G, [1] * G.b_size)
    deg_a = [0] * G.a_size
    deg_b = [0] * G.b_size
    for a, b in G.edges:
        deg_a[a] += 1
        deg_b[b] += 1
    n = G.a_size
    degree_condition = (
        G.a_size == G.b_size and min(deg_a + deg_b, default=0) * 2 >= n
    )
    perfect = value == G.a_size == G.b_size
    witness, side = None, None
    if not perfect:
        if value < G.a_size:
            reach = net.reachable(s)
            witness, side = frozenset(a for a in range(G.a_size) if a in reach), "A"
        else:
            other = hall_k_matching(G.swapped(), 1)
            witness, side = other.witness, "B"
    return MatchingResult(matching, perfect, witness, side, degree_condition)


# -- Menger ------------------------------------------------------------------


@dataclass(frozen=True)
class SeparatorResult:
    size: int
    vertices: frozenset[int]  # cut vertices, including A & B
    edges: frozenset[tuple[int, int]]  # direct A -> B edges (shared-source convention)


@dataclass(frozen=True)
class PathFan:
    target: int
    paths: tuple[Path, ...]


@dataclass(frozen=True)
class FanResult:
    fan: PathFan
    maximum: int  # size of a maximum fan
    requested: int
    within_cap: int  # selected paths with length <= max_len

    @property
    def achieved(self) -> int:
        return len(self.fan.paths)

    @property
    def complete(self) -> bool:
        return self.achieved >= self.requested and self.within_cap >= self.requested


@dataclass
class _Menger:
    D: Digraph
    A: set[int]
    B: set[int]
    shared: bool
    forbidden: set[int] = field(default_factory=set)

    def __post_init__(self):
        D, n = self.D, self.D.n
        self.trivial = self.A & self.B
        self.src, self.snk = 2 * n, 2 * n + 1
        net = _Network(2 * n + 2)
        self.vertex_arc: dict[int, int] = {}
        self.direct_arc: dict[tuple[int, int], int] = {}
        sources = self.A - self.B
        targets = self.B - self.A
        dead = self.trivial | (self.forbidden - sources - targets)
        for x in range(n):
            if x in dead:
                continue
            if x in targets:
                net.add(2 * x, self.snk, _INF)
                continue
            if x in sources:
                net.add(self.src, 2 * x, _INF)
                c = _INF if self.shared else 1
            else:
                c = 1
            self.vertex_arc[x] = net.add(2 * x, 2 * x + 1, c)
        for u, w in D.sorted_edges():
            if u in dead or w in dead or u in targets:
                continue
            if self.shared and u in sources and w in targets:
                self.direct_arc[(u, w)] = net.add(2 * u + 1, 2 * w, 1)
            else:
                net.add(2 * u + 1, 2 * w, _INF)
        self.net = net
        self.sources, self.targets = sources, targets
        self.value = net.max_flow(self.src, self.snk)

    def separator(self) -> SeparatorResult:
        reach = self.net.reachable(self.src)
        cut_v = {
            x for x, e in self.vertex_arc.items()
            if 2 * x in reach and 2 * x + 1 not in reach
        }
        cut_e = {
            (u, w) for (u, w), e in self.direct_arc.items()
            if 2 * u + 1 in reach and 2 * w not in reach
        }
        size = len(self.trivial) + len(cut_v) + len(cut_e)
        assert size == len(self.trivial) + self.value
        return SeparatorResult(size, frozenset(cut_v | self.trivial), frozenset(cut_e))

    def paths(self) -> list[Path]:
        """Decompose the flow into A->B paths, truncated at their last A vertex."""
        net = self.net
        flow = {e: net.flow_on(e) for u in range(net.size) for e in net.adj[u] if e % 2 == 0}
        out = []
        for _ in range(self.value):
            walk, u = [], self.src
            while u != self.snk:
                for e in net.adj[u]:
                    if e % 2 == 0 and flow.get(e, 0) > 0:
                        flow[e] -= 1
                        u = net.to[e]
                        break
                else:  # pragma: no cover - flow conservation guarantees a way out
                    raise RuntimeError("flow decomposition stuck")
                if u < 2 * self.D.n and u % 2 == 0:
                    walk.append(u // 2)
            last_a = max(i for i, x in enumerate(walk) if x in self.sources)
            out.append(tuple(walk[last_a:]))
        return out


def min_vertex_separator(
    D: Digraph,
    A: Iterable[int],
    B: Iterable[int],
    *,
    shared_sources: bool = True,
) -> SeparatorResult:
    """Smallest A,B-separator under the module's separator convention."""
    A, B = set(A), set(B)
    if not A or not B:
        raise ValueError("A and B must be non-empty")
    for x in A | B:
        D.check_vertex(x)
    return _Menger(D, A, B, shared_sources).separator()


def disjoint_path_fan(
    D: Digraph,
    A: Iterable[int],
    v: int,
    want: int,
    max_len: int | None = None,
    *,
    shared_sources: bool = True,
    forbidden: Iterable[int] = (),
) -> FanResult:
    """Up to ``want`` A->v paths pairwise meeting only at v (and, with shared
    sources, possibly at a common start in A).

    A maximum fan is computed first; the ``want`` shortest members are kept,
    ties broken lexicographically. ``forbidden`` vertices may not appear in
    path interiors; filter ``A`` yourself to restrict sources.
    """
    A = set(A)
    D.check_vertex(v)
    if v in A:
        return FanResult(PathFan(v, ((v,),)), 1, want, 1)
    if not A:
        return FanResult(PathFan(v, ()), 0, want, 0)
    m = _Menger(D, A, {v}, shared_sources, set(forbidden) - {v})
    paths = sorted(m.paths(), key=lambda p: (len(p), p))
    chosen = tuple(paths[:want])
    cap = max_len if max_len is not None else D.n
    within = sum(1 for p in chosen if len(p) - 1 <= cap)
    return FanResult(PathFan(v, chosen), m.value, want, within)
