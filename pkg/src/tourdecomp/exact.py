"""Exact path number by branch and bound, plus tournament enumeration.

The solver works on residual edge sets encoded as integer bitmasks. For a
fixed target ``k`` it asks whether the residual splits into at most ``k``
paths, branching on every path that starts at the lowest vertex of positive
residual excess (every decomposition must start a path there). Components of
excess zero have no forced start, so all start vertices are tried. ``k`` is
raised from the lower bound until the answer is yes, which makes the first
success optimal.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .decomposition import GENERAL, PERFECT, PathDecomposition, classify_decomposition
from .digraph import Digraph, Path, format_edge_list
from .errors import BudgetExceeded, CertificationError
from .excess import total_excess


@dataclass(frozen=True)
class PathNumberResult:
    pn: int  # exact value, or best known upper bound when not exact
    witness: PathDecomposition
    exact: bool
    lower_bound: int
    nodes: int

    @property
    def excess(self) -> int:
        return total_excess(self.witness.host)


class _Search:
    def __init__(self, D: Digraph, node_budget: int | None, deadline: float | None):
        self.D = D
        self.n = D.n
        self.edges = D.sorted_edges()
        self.bit = {e: 1 << i for i, e in enumerate(self.edges)}
        self.out = [[(w, self.bit[(v, w)]) for w in D.out_neighbors(v)] for v in range(D.n)]
        self.out_mask = [sum(b for _, b in self.out[v]) for v in range(D.n)]
        self.in_mask = [sum(self.bit[(u, v)] for u in D.in_neighbors(v)) for v in range(D.n)]
        self.inc_mask = [self.out_mask[v] | self.in_mask[v] for v in range(D.n)]
        self.exact: dict[int, tuple[int, tuple[Path, ...]]] = {}
        self.fail: dict[int, int] = {}
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = deadline

    # -- bounds ---------------------------------------------------------------

    def ex_vec(self, mask: int) -> list[int]:
        return [
            (mask & self.out_mask[v]).bit_count() - (mask & self.in_mask[v]).bit_count()
            for v in range(self.n)
        ]

    def components(self, mask: int) -> list[int]:
        comps = []
        left = mask
        while left:
            low = left & -left
            comp, frontier = 0, low
            while frontier:
                comp |= frontier
                verts = 0
                f = frontier
                while f:
                    b = f & -f
                    u, w = self.edges[b.bit_length() - 1]
                    verts |= (1 << u) | (1 << w)
                    f ^= b
                grow = 0
                while verts:
                    vb = verts & -verts
                    grow |= self.inc_mask[vb.bit_length() - 1]
                    verts ^= vb
                frontier = grow & mask & ~comp
            comps.append(comp)
            left &= ~comp
        return comps

    def lower_bound(self, mask: int) -> int:
        total = 0
        for c in self.components(mask):
            ex = sum(x for x in self.ex_vec(c) if x > 0)
            total += max(ex, 1)
        return total

    # -- path enumeration ----------------------------------------------------

    def paths_from(self, v: int, mask: int) -> Iterator[tuple[int, tuple[int, ...]]]:
        """All paths with at least one edge starting at v, deepest first."""
        out = self.out
        trail = [v]

        def rec(u: int, used_v: int, used_e: int):
            for w, b in out[u]:
                if mask & b and not used_v >> w & 1:
                    trail.append(w)
                    yield from rec(w, used_v | (1 << w), used_e | b)
                    yield used_e | b, tuple(trail)
                    trail.pop()

        yield from rec(v, 1 << v, 0)

    # -- search ---------------------------------------------------------------

    def tick(self) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceeded("node budget exhausted")
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")

    def solve(self, mask: int) -> tuple[int, tuple[Path, ...]]:
        if mask == 0:
            return 0, ()
        hit = self.exact.get(mask)
        if hit is not None:
            return hit
        comps = self.components(mask)
        if len(comps) > 1:
            total, paths = 0, ()
            for c in comps:
                k, p = self.solve(c)
                total += k
                paths += p
            self.exact[mask] = (total, paths)
            return total, paths
        k = self.lower_bound(mask)
        while True:
            found = self.feasible(mask, k)
            if found is not None:
                self.exact[mask] = (k, found)
                return k, found
            k += 1

    def feasible(self, mask: int, k: int) -> tuple[Path, ...] | None:
        if mask == 0:
            return ()
        if k <= 0:
            return None
        hit = self.exact.get(mask)
        if hit is not None:
            return hit[1] if hit[0] <= k else None
        if self.fail.get(mask, 0) >= k:
            return None
        self.tick()
        comps = self.components(mask)
        if len(comps) > 1:
            total, paths = self.solve(mask)
            return paths if total <= k else None
        ex = self.ex_vec(mask)
        lb = max(sum(x for x in ex if x > 0), 1)
        if lb > k:
            self.fail[mask] = max(self.fail.get(mask, 0), k)
            return None
        abs_sum = sum(abs(x) for x in ex)
        starts = [v for v in range(self.n) if ex[v] > 0][:1]
        if not starts:
            starts = [v for v in range(self.n) if mask & self.out_mask[v]]
        for v in starts:
            for pm, path in self.paths_from(v, mask):
                w = path[-1]
                rest = mask & ~pm
                if rest:
                    d = abs(ex[v] - 1) - abs(ex[v]) + abs(ex[w] + 1) - abs(ex[w])
                    need = max((abs_sum + d) // 2, 1)
                    if need > k - 1:
                        continue
                sub = self.feasible(rest, k - 1)
                if sub is not None:
                    return (path,) + sub
        self.fail[mask] = max(self.fail.get(mask, 0), k)
        return None

    def greedy(self, mask: int) -> tuple[Path, ...]:
        """Fast upper bound: peel the first deepest path from a forced start."""
        paths = []
        while mask:
            ex = self.ex_vec(mask)
            pos = [v for v in range(self.n) if ex[v] > 0]
            v = pos[0] if pos else next(u for u in range(self.n) if mask & self.out_mask[u])
            pm, path = next(self.paths_from(v, mask))
            paths.append(path)
            mask &= ~pm
        return tuple(paths)


def path_number_exact(
    D: Digraph,
    *,
    node_budget: int | None = None,
    time_budget_ms: float | None = None,
) -> PathNumberResult:
    """Minimum number of paths decomposing E(D).

    When a budget runs out the result carries the best known upper bound and
    ``exact=False``.
    """
    deadline = None if time_budget_ms is None else time.monotonic() + time_budget_ms / 1000
    s = _Search(D, node_budget, deadline)
    full = (1 << D.m) - 1
    ex = total_excess(D)
    try:
        k, paths = s.solve(full)
        exact, lb = True, k
    except BudgetExceeded:
        paths = s.greedy(full)
        k, exact, lb = len(paths), False, s.lower_bound(full) if full else 0
    if k < ex:
        raise CertificationError(f"solver returned {k} paths below ex(D) = {ex}")
    cls_ = classify_decomposition(D, paths)
    if not cls_.valid or not cls_.covers_edges or cls_.path_count != k:
        raise CertificationError(f"solver witness rejected: {cls_.violations}")
    expected = PERFECT if k == ex else GENERAL
    if cls_.kind != expected:
        raise CertificationError(f"witness classified {cls_.kind}, expected {expected}")
    return PathNumberResult(k, PathDecomposition(D, tuple(paths), cls_.kind), exact, lb, s.nodes)


@dataclass(frozen=True)
class QuarterCheck:
    pn: int
    bound: float
    exact: bool
    holds: bool | None  # None when only an inexact upper bound exceeded n^2/4


def pn_upper_quarter_check(T: Digraph, **budget) -> QuarterCheck:
    """Check pn(T) <= n^2/4 for a tournament T."""
    if not T.is_tournament:
        raise ValueError("pn_upper_quarter_check expects a tournament")
    res = path_number_exact(T, **budget)
    ok = 4 * res.pn <= T.n * T.n
    if res.exact and not ok:
        raise CertificationError(f"pn = {res.pn} exceeds n^2/4 = {T.n * T.n / 4}")
    return QuarterCheck(res.pn, T.n * T.n / 4, res.exact, True if ok else None)


# -- tournaments ----------------------------------------------------------------


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def tournament_from_bits(n: int, bits: int) -> Digraph:
    """Bit ``k`` set orients the k-th pair (i<j, row-major) as i->j."""
    return Digraph(n, ((i, j) if bits >> k & 1 else (j, i) for k, (i, j) in enumerate(_pairs(n))))


def random_tournament(n: int, rng: np.random.Generator, p: float = 0.5) -> Digraph:
    """Each pair i<j is oriented i->j with probability p."""
    draws = rng.random(n * (n - 1) // 2)
    return Digraph(n, ((i, j) if x < p else (j, i) for x, (i, j) in zip(draws, _pairs(n))))


def _refined_cells(T: Digraph) -> list[list[int]]:
    """Vertex cells of an isomorphism-invariant colour refinement, in canonical order."""
    n = T.n
    color = [T.out_degree(v) for v in range(n)]
    while True:
        sig = [
            (color[v], tuple(sorted(color[w] for w in T.out_neighbors(v))),
             tuple(sorted(color[w] for w in T.in_neighbors(v))))
            for v in range(n)
        ]
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        if len(keys) == len(set(color)):
            color = new
            break
        color = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(T: Digraph) -> int:
    """Minimum row-major adjacency bitstring over refinement-respecting relabelings.

    Two digraphs get the same value exactly when they are isomorphic.
    """
    n = T.n
    cells = _refined_cells(T)
    best = None
    adj = [T.out_neighbors(v) for v in range(n)]
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in choice for v in part]  # order[new] = old
        pos = [0] * n
        for new, old in enumerate(order):
            pos[old] = new
        code = 0
        for old in range(n):
            row = pos[old] * n
            for w in adj[old]:
                code |= 1 << (n * n - 1 - (row + pos[w]))
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def _from_code(n: int, code: int) -> Digraph:
    return Digraph(
        n,
        ((i, j) for i in range(n) for j in range(n) if code >> (n * n - 1 - (i * n + j)) & 1),
    )


MAX_LABELED_N = 6
MAX_ISO_N = 8


def enumerate_tournaments(n: int, up_to_iso: bool = False, *, force: bool = False) -> Iterator[Digraph]:
    """All labeled tournaments on n vertices, or one canonical representative
    per isomorphism class."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if up_to_iso:
        if n > MAX_ISO_N and not force:
            raise ValueError(f"isomorphism-class enumeration is limited to n <= {MAX_ISO_N}; use sampling")
        yield from _iso_classes(n)
        return
    if n > MAX_LABELED_N and not force:
        raise ValueError(f"labeled enumeration is limited to n <= {MAX_LABELED_N}; use sampling")
    for bits in range(1 << (n * (n - 1) // 2)):
        yield tournament_from_bits(n, bits)


def _iso_classes(n: int) -> list[Digraph]:
    reps = [Digraph(min(n, 1))] if n <= 1 else None
    if n == 0:
        return [Digraph(0)]
    if reps is not None:
        return reps
    codes: set[int] = set()
    for base in _iso_classes(n - 1):
        old = list(base.edges)
        for mask in range(1 << (n - 1)):
            new = [(n - 1, u) if mask >> u & 1 else (u, n - 1) for u in range(n - 1)]
            codes.add(canonical_form(Digraph(n, old + new)))
    return [_from_code(n, c) for c in sorted(codes)]


# -- conjecture verification ----------------------------------------------------


def instance_seeds(seed: int, count: int) -> list[int]:
    """Independent 64-bit seeds for instances 0..count-1, split from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def _edge_list(D: Digraph) -> list[list[int]]:
    return [list(e) for e in D.sorted_edges()]


def verify_conjecture(
    n: int,
    mode: str = "all",
    *,
    iso: bool = False,
    samples: int = 0,
    seed: int = 0,
    node_budget: int | None = None,
    time_budget_ms: float | None = None,
) -> dict:
    """Compare ex(T) with the exact pn(T) over even tournaments.

    ``mode='all'`` enumerates (labeled, or one per class with ``iso``);
    ``mode='sample'`` draws ``samples`` uniform labeled tournaments.
    """
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    t0 = time.monotonic()
    if mode == "all":
        instances = list(enumerate_tournaments(n, up_to_iso=iso))
    elif mode == "sample":
        instances = [random_tournament(n, np.random.default_rng(s)) for s in instance_seeds(seed, samples)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    consistent, violations, inconclusive = 0, [], []
    max_gap = 0
    slowest = 0.0
    for idx, T in enumerate(instances):
        ts = time.monotonic()
        res = path_number_exact(T, node_budget=node_budget, time_budget_ms=time_budget_ms)
        slowest = max(slowest, time.monotonic() - ts)
        ex = total_excess(T)
        if res.pn == ex:
            consistent += 1
        elif res.exact:
            max_gap = max(max_gap, res.pn - ex)
            violations.append({
                "index": idx, "ex": ex, "pn": res.pn,
                "edge_list": format_edge_list(T), "edges": _edge_list(T),
            })
        else:
            inconclusive.append({"index": idx, "ex": ex, "upper_bound": res.pn, "lower_bound": res.lower_bound})
    report = {
        "n": n,
        "mode": mode if mode == "all" else f"sample({samples}, {seed})",
        "iso": iso,
        "seed": seed if mode == "sample" else None,
        "instances": len(instances),
        "consistent": consistent,
        "violations": violations,
        "inconclusive": inconclusive,
        "max_pn_minus_ex": max_gap,
        "elapsed_ms": round((time.monotonic() - t0) * 1000, 3),
        "max_instance_ms": round(slowest * 1000, 3),
    }
    return report
