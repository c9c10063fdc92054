"""Brute-force reference implementations used only by the tests.

Nothing here imports the solver, flow or construction modules: these are
deliberately naive so that agreement with the package means something.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def simple_paths(n, edges, min_edges=1):
    """Every simple directed path with at least ``min_edges`` edges."""
    out_nb = {u: sorted(w for x, w in edges if x == u) for u in range(n)}
    found = []

    def grow(path):
        if len(path) - 1 >= min_edges:
            found.append(tuple(path))
        for w in out_nb[path[-1]]:
            if w not in path:
                grow(path + [w])

    for s in range(n):
        grow([s])
    return found


def brute_path_number(n, edges):
    """Minimum number of paths partitioning ``edges`` (subset DP)."""
    edges = sorted(edges)
    index = {e: i for i, e in enumerate(edges)}
    masks = []
    for p in simple_paths(n, edges):
        masks.append(sum(1 << index[(p[i], p[i + 1])] for i in range(len(p) - 1)))

    @lru_cache(maxsize=None)
    def best(mask):
        if mask == 0:
            return 0
        low = mask & -mask
        return 1 + min(best(mask & ~pm) for pm in masks if pm & low and pm & mask == pm)

    return best((1 << len(edges)) - 1)


def brute_excess(n, edges):
    ex = [0] * n
    for u, v in edges:
        ex[u] += 1
        ex[v] -= 1
    return ex, sum(x for x in ex if x > 0)


def brute_separator(n, edges, A, B, shared=True):
    """Smallest A,B-separator by exhaustive search.

    Vertices of A & B always count. Paths through A & B are ignored. With
    ``shared`` sources, each direct A->B edge counts once and the blocking set
    is drawn from vertices outside A | B; otherwise any vertex outside B may
    be chosen and no edge is counted.
    """
    A, B = set(A), set(B)
    trivial = A & B
    src, dst = A - B, B - A
    paths = [p for p in simple_paths(n, edges)
             if p[0] in src and p[-1] in dst and not set(p) & trivial
             and not set(p[1:-1]) & (A | B)]
    if shared:
        direct = {p for p in paths if len(p) == 2}
        longer = [p for p in paths if len(p) > 2]
        pool = sorted(set(range(n)) - A - B)
        need = lambda X: all(set(p[1:-1]) & X for p in longer)
        base = len(trivial) + len(direct)
    else:
        pool = sorted(set(range(n)) - B - trivial)
        need = lambda X: all(set(p[:-1]) & X for p in paths)
        base = len(trivial)
    for k in range(len(pool) + 1):
        for X in itertools.combinations(pool, k):
            if need(set(X)):
                return base + k
    raise AssertionError("unreachable: the whole pool separates")


def brute_hall_ok(a_size, b_size, edges, caps):
    """Whether every X in A has sum of caps over N(X) >= |X|."""
    nb = [set() for _ in range(a_size)]
    for a, b in edges:
        nb[a].add(b)
    for k in range(1, a_size + 1):
        for X in itertools.combinations(range(a_size), k):
            N = set().union(*(nb[a] for a in X))
            if sum(caps[b] for b in N) < len(X):
                return False
    return True


def longest_cycle_length(n, edges):
    best = 0
    for p in simple_paths(n, edges, min_edges=0):
        if (p[-1], p[0]) in edges and len(p) >= 2 or (len(p) == 1 and (p[0], p[0]) in edges):
            best = max(best, len(p))
    return best


def all_digraphs(n, oriented=False):
    """Every digraph (or oriented graph) on range(n), as edge sets."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    states = (0, 1, 2) if oriented else (0, 1, 2, 3)
    for choice in itertools.product(states, repeat=len(pairs)):
        edges = set()
        for (i, j), c in zip(pairs, choice):
            if c & 1:
                edges.add((i, j))
            if c & 2:
                edges.add((j, i))
        yield edges


def eulerian_orientations(n, undirected):
    """All orientations of an undirected edge list with in = out everywhere."""
    for bits in itertools.product((0, 1), repeat=len(undirected)):
        edges = {(u, v) if b else (v, u) for (u, v), b in zip(undirected, bits)}
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] -= 1
        if not any(deg):
            yield edges


def balanced_orientations(n, undirected):
    """Same as :func:`eulerian_orientations`, by backtracking.

    A vertex's balance is checked as soon as its last edge is oriented, so
    graphs with 20+ edges stay cheap.
    """
    undirected = list(undirected)
    last = {}
    for i, (u, v) in enumerate(undirected):
        last[u] = last[v] = i
    bal = [0] * n
    cur = []

    def rec(i):
        if i == len(undirected):
            yield set(cur)
            return
        u, v = undirected[i]
        for a, b in ((u, v), (v, u)):
            bal[a] += 1
            bal[b] -= 1
            cur.append((a, b))
            if (last[u] != i or bal[u] == 0) and (last[v] != i or bal[v] == 0):
                yield from rec(i + 1)
            bal[a] -= 1
            bal[b] += 1
            cur.pop()

    yield from rec(0)


def is_perfect_decomposition(n, edges, paths):
    """Paths are simple, partition ``edges``, and number exactly ex."""
    edges = set(edges)
    seen = []
    for p in paths:
        if len(p) < 2:
            continue
        if len(set(p)) != len(p) or not all(0 <= v < n for v in p):
            return False
        seen.extend(zip(p, p[1:]))
    if len(seen) != len(set(seen)) or set(seen) != edges:
        return False
    return sum(len(p) > 1 for p in paths) == brute_excess(n, edges)[1]
