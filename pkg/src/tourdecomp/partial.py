"""Checked rewrite steps on partial decompositions.

Each ``certify``-style function either returns quietly (or returns the new
object it builds) or raises :class:`CertificationError` naming the offending
vertex, edge or path index. They are meant to sit inside pipelines as
assertions that the bookkeeping is still sound.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .decomposition import PERFECT, PathDecomposition, budget_violations, classify_decomposition
from .digraph import Digraph, Path, path_edges
from .errors import CertificationError, DigraphError, NotEulerianError
from .excess import excess_vector, total_excess


def _require_partial(D: Digraph, paths: Sequence[Sequence[int]], what: str) -> None:
    cls_ = classify_decomposition(D, paths)
    if not cls_.valid:
        raise CertificationError(f"{what} is not a set of edge-disjoint paths: {cls_.violations[0]}")
    bad = budget_violations(D, paths)
    if bad:
        v, msg = bad[0]
        raise CertificationError(f"{what} is not partial: {msg}", vertex=v)


def _edges_of(paths: Iterable[Sequence[int]]) -> list:
    return [e for p in paths for e in path_edges(p)]


def additivity_holds(D: Digraph, H: Digraph) -> bool:
    """Whether ex*_H(v) <= ex*_D(v) for every v and both signs."""
    exd, exh = excess_vector(D), excess_vector(H)
    return all(
        max(h, 0) <= max(d, 0) and max(-h, 0) <= max(-d, 0) for d, h in zip(exd, exh)
    )


def remove_decomposition(D: Digraph, paths: Sequence[Sequence[int]]) -> Digraph:
    """``D`` minus the edges of ``paths``.

    When the removed subgraph H satisfies the componentwise excess hypothesis,
    ex(D) = ex(H) + ex(D - H) is checked as well.
    """
    edges = _edges_of(paths)
    for e in edges:
        if not D.has_edge(*e):
            raise DigraphError(f"edge {e} is not in the digraph")
    H = Digraph(D.n, edges)
    rest = D.remove_edges(edges)
    if additivity_holds(D, H):
        lhs, rh, rr = total_excess(D), total_excess(H), total_excess(rest)
        if lhs != rh + rr:
            raise CertificationError(f"excess not additive: {lhs} != {rh} + {rr}")
    return rest


def subset_partial(
    D: Digraph, P: Sequence[Sequence[int]], Q: Sequence[Sequence[int]]
) -> None:
    """Check that Q (a sub-multiset of partial P) is partial for D and for D - E(P \\ Q)."""
    _require_partial(D, P, "P")
    left = Counter(tuple(p) for p in P)
    for i, q in enumerate(Q):
        key = tuple(q)
        if left[key] == 0:
            raise CertificationError(f"Q[{i}] = {key} is not a member of P", index=i)
        left[key] -= 1
    rest = [p for p, k in left.items() for _ in range(k)]
    _require_partial(D, Q, "Q (in D)")
    _require_partial(D.remove_edges(_edges_of(rest)), Q, "Q (in D - E(P \\ Q))")


def reroute_endpoints(
    D: Digraph,
    P: Sequence[Sequence[int]],
    Q: Sequence[Sequence[int]],
    pi: Sequence[int],
) -> None:
    """Certify Q partial when Q[i] runs from start(P[i]) to end(P[pi[i]])."""
    _require_partial(D, P, "P")
    k = len(P)
    if len(Q) > k:
        raise CertificationError(f"|Q| = {len(Q)} exceeds |P| = {k}")
    if sorted(pi) != list(range(k)):
        raise CertificationError(f"pi = {list(pi)} is not a permutation of range({k})")
    for i, q in enumerate(Q):
        x, y = P[i][0], P[pi[i]][-1]
        if not q or q[0] != x:
            raise CertificationError(f"Q[{i}] starts at {q[0] if q else None}, expected x_{i} = {x}", index=i)
        if q[-1] != y:
            raise CertificationError(f"Q[{i}] ends at {q[-1]}, expected y_pi({i}) = {y}", index=i)
    _require_partial(D, Q, "Q")


def eulerian_quotient_partial(
    D: Digraph, D_euler: Digraph, Q: Sequence[Sequence[int]]
) -> None:
    """Certify Q partial for D given Q partial for D - D_euler, D_euler Eulerian."""
    if not D_euler.is_subgraph_of(D):
        extra = sorted(D_euler.edges - D.edges)
        raise CertificationError(f"edge {extra[0] if extra else None} of D' is not in D", edge=extra[0] if extra else None)
    for v, x in enumerate(excess_vector(D_euler)):
        if x != 0:
            raise NotEulerianError(v, x)
    _require_partial(D.remove_edges(D_euler.edges), Q, "Q (in D - D')")
    _require_partial(D, Q, "Q (in D)")


def _check_partition(D: Digraph, a_plus, a_minus, R) -> tuple[set, set, set]:
    ap, am, r = set(a_plus), set(a_minus), set(R)
    if ap & am or ap & r or am & r or (ap | am | r) != set(range(D.n)):
        raise DigraphError("A+, A-, R must partition the vertex set")
    for u, v in D.sorted_edges():
        if u in r and v in ap:
            raise CertificationError(f"edge {(u, v)} runs from R into A+", edge=(u, v))
        if u in am and v in r:
            raise CertificationError(f"edge {(u, v)} runs from A- into R", edge=(u, v))
        if u in ap | am and v in ap | am:
            raise CertificationError(f"edge {(u, v)} lies inside A+ u A-", edge=(u, v))
    return ap, am, r


def extend_over_partition(
    D: Digraph,
    a_plus: Iterable[int],
    a_minus: Iterable[int],
    R: Iterable[int],
    P: Sequence[Sequence[int]],
) -> list[Path]:
    """Extend a partial decomposition of D[R] to one of D.

    Paths are processed in order against D minus the already-extended paths;
    each gains at most one leading edge from A+ and one trailing edge into A-.
    Single-vertex paths are passed through unchanged.
    """
    ap, am, r = _check_partition(D, a_plus, a_minus, R)
    _require_partial(D.induced(r), P, "P (in D[R])")
    used: set = set()
    out: list[Path] = []
    for p in P:
        p = tuple(p)
        if len(p) >= 2:
            x, y = p[0], p[-1]
            head = [a for a in D.in_neighbors(x) if a in ap and (a, x) not in used]
            tail = [a for a in D.out_neighbors(y) if a in am and (y, a) not in used]
            p = tuple(head[:1]) + p + tuple(tail[:1])
        used.update(path_edges(p))
        out.append(p)
    _require_partial(D, out, "extended P")
    return out


def perfect_from_restriction(
    D: Digraph,
    a_plus: Iterable[int],
    a_minus: Iterable[int],
    R: Iterable[int],
    P_R: Sequence[Sequence[int]],
) -> PathDecomposition:
    """Lift a perfect decomposition of D[R] to a perfect decomposition of D."""
    from .construct.acyclic import acyclic_perfect_decomposition

    ap, am, r = _check_partition(D, a_plus, a_minus, R)
    DR = D.induced(r)
    if classify_decomposition(DR, P_R).kind != PERFECT:
        raise CertificationError("P_R is not a perfect decomposition of D[R]")
    lifted = extend_over_partition(D, ap, am, r, P_R)
    remainder = D.remove_edges(_edges_of(lifted))
    tail = acyclic_perfect_decomposition(remainder)
    paths = [p for p in lifted if len(p) >= 2] + list(tail.paths)
    cls_ = classify_decomposition(D, paths)
    if cls_.kind != PERFECT:
        raise CertificationError(f"lifted decomposition is {cls_.kind}: {cls_.violations}")
    return PathDecomposition(D, tuple(paths), PERFECT)
