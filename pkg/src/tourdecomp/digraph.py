"""Loop-free digraphs on vertices ``0..n-1`` plus path/cycle helpers.

Paths and cycles are plain tuples of vertices. A cycle is stored without
repeating its first vertex, so ``(0, 1, 2)`` is the triangle 0->1->2->0.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CyclicInputError, DigraphError

Edge = tuple[int, int]
Path = tuple[int, ...]
Cycle = tuple[int, ...]


class Digraph:
    """Immutable simple digraph (no loops, no parallel edges).

    Opposite edges ``u->v`` and ``v->u`` are allowed; use :attr:`is_oriented`
    to test for an oriented graph.
    """

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise DigraphError(f"vertex count must be non-negative, got {n}")
        out: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            if v in out[u]:
                raise DigraphError(f"duplicate edge ({u}, {v})")
            out[u].add(v)
        self.n = n
        self._out = tuple(tuple(sorted(s)) for s in out)
        self._edges = frozenset((u, v) for u in range(n) for v in out[u])

    # -- construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls(n)

    @classmethod
    def from_paths(cls, n: int, paths: Iterable[Sequence[int]]) -> "Digraph":
        """Union of the edges of ``paths`` (they must be edge-disjoint)."""
        return cls(n, (e for p in paths for e in path_edges(p)))

    # -- basic accessors ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            for v in self._out[u]:
                inc[v].append(u)
        return tuple(tuple(sorted(x)) for x in inc)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edges

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def degree(self, v: int) -> int:
        return len(self._out[v]) + len(self._in[v])

    def vertices(self) -> range:
        return range(self.n)

    def non_isolated(self) -> list[int]:
        return [v for v in range(self.n) if self._out[v] or self._in[v]]

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise DigraphError(f"vertex {v!r} out of range 0..{self.n - 1}")

    # -- predicates -----------------------------------------------------------

    @cached_property
    def is_oriented(self) -> bool:
        return all((v, u) not in self._edges for u, v in self._edges)

    @cached_property
    def is_tournament(self) -> bool:
        return self.is_oriented and self.m == self.n * (self.n - 1) // 2

    @cached_property
    def is_eulerian(self) -> bool:
        return all(len(self._out[v]) == len(self._in[v]) for v in range(self.n))

    @cached_property
    def is_acyclic(self) -> bool:
        return find_cycle(self) is None

    # -- derived digraphs ----------------------------------------------------

    def remove_edges(self, edges: Iterable[Edge]) -> "Digraph":
        drop = set(edges)
        missing = drop - self._edges
        if missing:
            raise DigraphError(f"edge {min(missing)} is not in the digraph")
        return Digraph(self.n, self._edges - drop)

    def add_edges(self, edges: Iterable[Edge]) -> "Digraph":
        return Digraph(self.n, list(self._edges) + list(edges))

    def induced(self, keep: Iterable[int]) -> "Digraph":
        """``D[keep]`` on the same vertex labels; other vertices become isolated."""
        ks = set(keep)
        return Digraph(self.n, ((u, v) for u, v in self._edges if u in ks and v in ks))

    def delete_vertices(self, drop: Iterable[int]) -> "Digraph":
        ds = set(drop)
        return Digraph(self.n, ((u, v) for u, v in self._edges if u not in ds and v not in ds))

    def reverse(self) -> "Digraph":
        return Digraph(self.n, ((v, u) for u, v in self._edges))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Digraph(self.n, ((perm[u], perm[v]) for u, v in self._edges))

    def is_subgraph_of(self, other: "Digraph") -> bool:
        return self.n == other.n and self._edges <= other._edges

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


# -- paths and cycles ---------------------------------------------------------


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    k = len(cycle)
    return [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def path_problems(D: Digraph, path: Sequence[int]) -> list[str]:
    """Reasons ``path`` is not a path of ``D`` (empty list when valid)."""
    problems = []
    if len(path) == 0:
        return ["empty vertex sequence"]
    for v in path:
        if not (isinstance(v, int) and 0 <= v < D.n):
            problems.append(f"vertex {v!r} out of range")
    if problems:
        return problems
    if len(set(path)) != len(path):
        seen = set()
        for v in path:
            if v in seen:
                problems.append(f"vertex {v} repeated")
                break
            seen.add(v)
    for u, v in path_edges(path):
        if not D.has_edge(u, v):
            problems.append(f"edge ({u}, {v}) not in digraph")
    return problems


def is_path(D: Digraph, path: Sequence[int]) -> bool:
    return not path_problems(D, path)


def is_cycle(D: Digraph, cycle: Sequence[int]) -> bool:
    return (
        len(cycle) >= 2
        and len(set(cycle)) == len(cycle)
        and all(D.has_edge(u, v) for u, v in cycle_edges(cycle))
    )


def find_cycle(D: Digraph) -> Cycle | None:
    """First cycle met by DFS from the lowest vertex, neighbours ascending.

    The cycle is closed by the first back edge found and returned starting at
    the back edge's head.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * D.n
    for root in range(D.n):
        if color[root] != WHITE:
            continue
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(D.out_neighbors(root)))]
        trail = [root]
        color[root] = GREY
        while stack:
            u, it = stack[-1]
            for w in it:
                if color[w] == GREY:
                    return tuple(trail[trail.index(w):])
                if color[w] == WHITE:
                    color[w] = GREY
                    trail.append(w)
                    stack.append((w, iter(D.out_neighbors(w))))
                    break
            else:
                color[u] = BLACK
                trail.pop()
                stack.pop()
    return None


def topological_order(D: Digraph) -> list[int]:
    """Kahn order with smallest available vertex first."""
    import heapq

    indeg = [D.in_degree(v) for v in range(D.n)]
    heap = [v for v in range(D.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in D.out_neighbors(u):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != D.n:
        raise CyclicInputError(find_cycle(D) or ())
    return order


def weak_components(D: Digraph) -> list[list[int]]:
    """Weakly connected components that contain at least one edge."""
    parent = list(range(D.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in D.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in D.non_isolated():
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


# -- named small digraphs used across tests and docs --------------------------


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


# -- edge-list text format ----------------------------------------------------


def format_edge_list(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in D.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Digraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DigraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DigraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise DigraphError("missing header line 'n m'")
    (n, m), edges = rows[0], rows[1:]
    if len(edges) != m:
        raise DigraphError(f"header declares {m} edges but {len(edges)} follow")
    return Digraph(n, edges)


def read_edge_list(path) -> Digraph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(D: Digraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(D))
