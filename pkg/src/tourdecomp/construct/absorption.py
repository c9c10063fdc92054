"""Absorbing path systems and the absorb-then-decompose pipeline.

For every vertex v we build ``ell`` short in-paths from high positive excess
vertices to v and ``ell`` short out-paths from v to high negative excess
vertices. Removing them leaves a digraph whose Eulerian part is cut into
cycles; cycle segments between representatives are glued onto in-paths, and
at each vertex the in-paths are matched to out-paths. The acyclic rest is
decomposed greedily.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..decomposition import PERFECT, PathDecomposition, classify_decomposition
from ..digraph import Digraph, Path, path_edges
from ..errors import CertificationError, InfeasibleCapsError
from ..excess import excess_vector, threshold_sets, total_excess
from ..flow import BipartiteGraph, disjoint_path_fan, perfect_matching
from ..partial import additivity_holds, remove_decomposition
from .acyclic import acyclic_perfect_decomposition
from .eulerian import assign_representatives, greedy_cycle_decomposition, split_eulerian


@dataclass(frozen=True)
class AbsorptionParams:
    ell: int  # paths per vertex and direction
    m: int  # path length cap
    s: int  # excess threshold and degree cap
    gamma: float = 0.0  # informational only
    interval_cap: int | None = None  # representative spacing; default ceil(n^(2/3))

    def __post_init__(self):
        if self.ell < 1 or self.m < 1 or self.s < 1:
            raise ValueError(f"ell, m, s must all be >= 1, got {self.ell}, {self.m}, {self.s}")
        if self.interval_cap is not None and self.interval_cap < 2:
            raise ValueError("interval_cap must be >= 2")

    def to_dict(self) -> dict:
        return {"ell": self.ell, "m": self.m, "s": self.s, "gamma": self.gamma,
                "interval_cap": self.interval_cap}


def suggest_params(T: Digraph) -> AbsorptionParams:
    """Desk-scale defaults; the asymptotic formulas exceed n for small n."""
    n = max(T.n, 1)
    ell = max(1, math.floor(n ** (2 / 3)) // 8)
    m = max(2, math.ceil(4 * n ** (1 / 9)))
    s = max(2, math.ceil(total_excess(T) * 2 / n))
    return AbsorptionParams(ell, m, s)


class AbsorptionError(Exception):
    def __init__(self, stage: str, reason: str, **details: Any):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason
        self.details = details

    def to_dict(self) -> dict:
        return {"stage": self.stage, "reason": self.reason, "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    return x


@dataclass(frozen=True)
class AbsorptionStructure:
    in_paths: dict[tuple[int, int], Path]  # (v, j) -> path from W+_s to v
    out_paths: dict[tuple[int, int], Path]  # (v, j) -> path from v to W-_s
    params: AbsorptionParams

    def all_paths(self) -> list[Path]:
        return list(self.in_paths.values()) + list(self.out_paths.values())

    def union(self, n: int) -> Digraph:
        return Digraph(n, (e for p in self.all_paths() for e in path_edges(p)))


def structure_violations(T: Digraph, S: AbsorptionStructure) -> list[str]:
    """Every broken structural invariant (empty when the structure is sound)."""
    p = S.params
    w_plus, w_minus = threshold_sets(T, p.s)
    bad = []
    seen: dict = {}
    for kind, fam in (("in", S.in_paths), ("out", S.out_paths)):
        for (v, j), path in sorted(fam.items()):
            tag = f"{kind}-path ({v},{j})"
            if len(set(path)) != len(path):
                bad.append(f"{tag} repeats a vertex")
            for e in path_edges(path):
                if not T.has_edge(*e):
                    bad.append(f"{tag} uses non-edge {e}")
                if e in seen:
                    bad.append(f"{tag} shares edge {e} with {seen[e]}")
                seen[e] = tag
            if len(path) - 1 > p.m:
                bad.append(f"{tag} has length {len(path) - 1} > m = {p.m}")
            if kind == "in" and (path[-1] != v or path[0] not in w_plus):
                bad.append(f"{tag} does not run from W+ to {v}")
            if kind == "out" and (path[0] != v or path[-1] not in w_minus):
                bad.append(f"{tag} does not run from {v} to W-")
    for kind, fam in (("in", S.in_paths), ("out", S.out_paths)):
        by_v: dict[int, list[Path]] = {}
        for (v, _), path in fam.items():
            by_v.setdefault(v, []).append(path)
        for v, paths in by_v.items():
            if len(paths) != p.ell:
                bad.append(f"vertex {v} has {len(paths)} {kind}-paths, expected {p.ell}")
            multi = [q for q in paths if len(q) > 1]
            for a in range(len(multi)):
                for b in range(a + 1, len(multi)):
                    common = set(multi[a]) & set(multi[b])
                    if common != {v}:
                        bad.append(f"{kind}-paths of {v} meet at {sorted(common - {v})}")
    H = S.union(T.n)
    top = max((H.degree(v) for v in range(T.n)), default=0)
    if top > p.s:
        bad.append(f"max degree {top} of the union exceeds s = {p.s}")
    return bad


def build_absorption_structure(
    T: Digraph, params: AbsorptionParams, order: Sequence[int] | None = None
) -> AbsorptionStructure:
    """Sweep the vertices, giving each its in-fan and out-fan.

    Vertices whose degree in the paths built so far reaches s/4 may not be
    interior vertices of new paths. Endpoints stop serving as sources/sinks
    once the degree they still need for their own fans would push them past s.
    Raises :class:`AbsorptionError` on a shortfall.
    """
    n, ell, s = T.n, params.ell, params.s
    w_plus, w_minus = threshold_sets(T, s)
    if not w_plus:
        raise AbsorptionError("build", f"W+_{s} is empty", s=s)
    if not w_minus:
        raise AbsorptionError("build", f"W-_{s} is empty", s=s)
    used: set = set()
    deg = [0] * n
    in_paths: dict[tuple[int, int], Path] = {}
    out_paths: dict[tuple[int, int], Path] = {}

    def take(paths: list[Path]) -> None:
        for path in paths:
            for u, w in path_edges(path):
                used.add((u, w))
                deg[u] += 1
                deg[w] += 1

    # degree each vertex still needs for its own fans
    reserve = [ell * ((u not in w_plus) + (u not in w_minus)) for u in range(n)]

    def room(u: int) -> int:
        return s - deg[u] - reserve[u]

    for v in (range(n) if order is None else order):
        reserve[v] = 0
        forbidden = {u for u in range(n) if u != v and (4 * deg[u] >= s or room(u) < 4)}
        residual = T.remove_edges(used)
        if v in w_plus:
            fan_in = [(v,)] * ell
        else:
            sources = {w for w in w_plus if room(w) >= 1}
            res = disjoint_path_fan(residual, sources, v, ell, params.m,
                                    shared_sources=False, forbidden=forbidden)
            fan_in = [p for p in res.fan.paths if len(p) - 1 <= params.m]
            if len(fan_in) < ell:
                raise AbsorptionError("build", "in-fan shortfall", vertex=v,
                                      achieved=len(fan_in), required=ell, maximum=res.maximum)
        take(fan_in)
        residual = residual.remove_edges(e for p in fan_in for e in path_edges(p))
        if v in w_minus:
            fan_out = [(v,)] * ell
        else:
            sinks = {w for w in w_minus if room(w) >= 1}
            res = disjoint_path_fan(residual.reverse(), sinks, v, ell, params.m,
                                    shared_sources=False, forbidden=forbidden)
            fan_out = [tuple(reversed(p)) for p in res.fan.paths if len(p) - 1 <= params.m]
            if len(fan_out) < ell:
                raise AbsorptionError("build", "out-fan shortfall", vertex=v,
                                      achieved=len(fan_out), required=ell, maximum=res.maximum)
        take(fan_out)
        over = [u for u in range(n) if deg[u] > s]
        if over:
            raise AbsorptionError("build", "degree cap exceeded", vertex=v,
                                  over=over, cap=s)
        for j in range(ell):
            in_paths[(v, j)] = fan_in[j]
            out_paths[(v, j)] = fan_out[j]
    structure = AbsorptionStructure(in_paths, out_paths, params)
    problems = structure_violations(T, structure)
    if problems:
        raise CertificationError(f"absorbing structure unsound: {problems[0]}")
    return structure


# -- pipeline ------------------------------------------------------------------------


@dataclass
class AbsorptionOutcome:
    decomposition: PathDecomposition | None
    failure: AbsorptionError | None
    trace: list[dict] = field(default_factory=list)
    structure: AbsorptionStructure | None = None

    @property
    def success(self) -> bool:
        return self.decomposition is not None

    def trace_dict(self) -> dict:
        return {
            "success": self.success,
            "failure": None if self.failure is None else self.failure.to_dict(),
            "stages": self.trace,
        }


def absorb_and_decompose(
    T: Digraph, params: AbsorptionParams | None = None, *, cycle_mode: str = "auto"
) -> AbsorptionOutcome:
    """Perfect decomposition of T through absorption, or a failure report."""
    params = params or suggest_params(T)
    trace: list[dict] = []
    out = AbsorptionOutcome(None, None, trace)
    ex_t = total_excess(T)

    def record(stage: str, input_edges: int, summary: dict, checks: dict) -> None:
        trace.append({"stage": stage, "input_edges": input_edges,
                      "output_summary": summary, "assertion_results": checks})

    try:
        S = build_absorption_structure(T, params)
        out.structure = S
        H = S.union(T.n)
        record("build", T.m, {"paths": len(S.all_paths()), "edges": H.m},
               {"structure_sound": True})

        if not additivity_holds(T, H):
            v = next(u for u, (a, b) in enumerate(zip(excess_vector(T), excess_vector(H)))
                     if max(b, 0) > max(a, 0) or max(-b, 0) > max(-a, 0))
            raise AbsorptionError("excess", "absorbing paths overdraw the excess", vertex=v)
        rest = remove_decomposition(T, S.all_paths())
        ex_h, ex_rest = total_excess(H), total_excess(rest)
        record("remove", T.m, {"residual_edges": rest.m, "ex_H": ex_h, "ex_residual": ex_rest},
               {"additive": ex_t == ex_h + ex_rest})
        if ex_t != ex_h + ex_rest:
            raise AbsorptionError("excess", "excess not additive", ex=ex_t, ex_H=ex_h, ex_rest=ex_rest)

        T_E, T_R = split_eulerian(rest)
        record("split", rest.m, {"eulerian_edges": T_E.m, "acyclic_edges": T_R.m},
               {"eulerian": T_E.is_eulerian, "acyclic": T_R.is_acyclic,
                "conserved": total_excess(T_R) == ex_rest})

        cycles = greedy_cycle_decomposition(T_E, cycle_mode)
        cap = params.interval_cap or max(2, math.ceil(T.n ** (2 / 3)))
        try:
            reps = assign_representatives(cycles, cap, params.ell)
        except InfeasibleCapsError as err:
            raise AbsorptionError("representatives", str(err), witness=list(err.witness)) from None
        record("cycles", T_E.m, {"cycles": len(cycles), "interval_cap": cap,
                                 "representatives": sum(len(c.reps) for c in reps)},
               {"min_reps": min((len(c.reps) for c in reps), default=2) >= 2,
                "max_gap_ok": all(c.max_gap() <= cap for c in reps)})

        ends = _splice(S, reps, params.ell)
        record("splice", T_E.m, {"intervals": sum(len(c.reps) for c in reps)},
               {"ell_paths_per_vertex": all(len(ps) == params.ell for ps in ends.values())})

        joined = _match(S, ends, T.n)
        record("match", H.m + T_E.m, {"paths": len(joined)}, {"count_is_ex_H": len(joined) == ex_h})

        tail = acyclic_perfect_decomposition(T_R)
        paths = joined + list(tail.paths)
        cls_ = classify_decomposition(T, paths)
        ok = cls_.kind == PERFECT and len(paths) == ex_t
        record("acyclic", T_R.m, {"paths": len(tail.paths)},
               {"perfect": cls_.kind == PERFECT, "count_is_ex": len(paths) == ex_t})
        if not ok:
            raise AbsorptionError("validation", f"result classified {cls_.kind}",
                                  violations=list(cls_.violations[:5]))
        out.decomposition = PathDecomposition(T, tuple(paths), PERFECT)
    except AbsorptionError as err:
        out.failure = err
    return out


def _splice(S: AbsorptionStructure, reps, ell: int) -> dict[int, list[Path]]:
    """Glue every representative interval onto a fresh in-path of its first vertex.

    Returns, per vertex, the ell paths that now end there.
    """
    free = {v: list(range(ell)) for v in {v for v, _ in S.in_paths}}
    ends: dict[int, list[Path]] = {v: [] for v in free}
    for ci, cw in enumerate(reps):
        for iv in cw.intervals():
            x = iv[0]
            body = set(iv)
            pick = next((j for j in free[x] if set(S.in_paths[(x, j)]) & body == {x}), None)
            if pick is None:
                raise AbsorptionError("splice", "no free in-path avoids the interval",
                                      vertex=x, cycle=ci, interval=list(iv))
            free[x].remove(pick)
            ends[iv[-1]].append(S.in_paths[(x, pick)] + iv[1:])
    for v, js in free.items():
        ends[v].extend(S.in_paths[(v, j)] for j in js)
    return ends


def _match(S: AbsorptionStructure, ends: dict[int, list[Path]], n: int) -> list[Path]:
    joined = []
    for v in range(n):
        ins = ends.get(v, [])
        outs = [S.out_paths[(v, j)] for j in range(S.params.ell)]
        edges = [
            (a, b)
            for a, p in enumerate(ins)
            for b, q in enumerate(outs)
            if set(p) & set(q) == {v}
        ]
        res = perfect_matching(BipartiteGraph.from_edges(len(ins), len(outs), edges))
        if not res.perfect:
            raise AbsorptionError("match", "no perfect matching of in-paths to out-paths",
                                  vertex=v, matched=res.size, required=len(outs))
        for a, b in sorted(res.matching.items()):
            joined.append(ins[a] + outs[b][1:])
    return joined
