"""Perfect decomposition of an acyclic digraph by repeated longest paths."""

from __future__ import annotations

from ..decomposition import PERFECT, PathDecomposition, classify_decomposition
from ..digraph import Digraph, Path, find_cycle, path_edges, topological_order
from ..errors import CertificationError, CyclicInputError
from ..excess import total_excess


def longest_path(D: Digraph) -> Path:
    """A maximum-length path of an acyclic digraph.

    Ties go to the smallest start vertex and then the smallest next vertex, so
    the result is deterministic. Returns ``()`` for an edgeless digraph.
    """
    order = topological_order(D)
    reach = [0] * D.n  # longest path length starting at v
    for u in reversed(order):
        best = 0
        for w in D.out_neighbors(u):
            best = max(best, reach[w] + 1)
        reach[u] = best
    top = max(reach, default=0)
    if top == 0:
        return ()
    v = min(u for u in range(D.n) if reach[u] == top)
    path = [v]
    while reach[v] > 0:
        v = min(w for w in D.out_neighbors(v) if reach[w] == reach[v] - 1)
        path.append(v)
    return tuple(path)


def acyclic_perfect_decomposition(D: Digraph) -> PathDecomposition:
    cyc = find_cycle(D)
    if cyc is not None:
        raise CyclicInputError(cyc)
    paths: list[Path] = []
    residual = D
    ex = total_excess(D)
    while residual.m:
        p = longest_path(residual)
        residual = residual.remove_edges(path_edges(p))
        ex_next = total_excess(residual)
        if ex_next != ex - 1:
            raise CertificationError(
                f"removing longest path {p} changed ex from {ex} to {ex_next}"
            )
        ex = ex_next
        paths.append(p)
    cls_ = classify_decomposition(D, paths)
    if cls_.kind != PERFECT:
        raise CertificationError(f"acyclic decomposition not perfect: {cls_.violations}")
    return PathDecomposition(D, tuple(paths), PERFECT)
