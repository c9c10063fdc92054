"""Classifying collections of paths against a host digraph.

A collection is ``invalid`` when some member is not a path of the host or two
members share an edge. Valid collections are ``perfect`` (edges partitioned by
exactly ex(D) non-trivial paths), else ``partial`` (start/end budgets
respected), else ``general``.

Single-vertex paths are tolerated anywhere. They use no edges, are not counted
as starting or ending anywhere, and do not count towards the ex(D) total; they
only matter for the vertex-coverage report.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .digraph import Digraph, Path, path_edges, path_problems
from .excess import excess_vector

INVALID, GENERAL, PARTIAL, PERFECT = "invalid", "general", "partial", "perfect"


@dataclass(frozen=True)
class Classification:
    kind: str
    violations: tuple[str, ...]
    covers_edges: bool
    covers_vertices: bool
    path_count: int  # non-trivial paths only

    @property
    def valid(self) -> bool:
        return self.kind != INVALID

    @property
    def is_partial(self) -> bool:
        return self.kind in (PARTIAL, PERFECT)


def endpoint_counts(paths: Iterable[Sequence[int]]) -> tuple[Counter, Counter]:
    starts, ends = Counter(), Counter()
    for p in paths:
        if len(p) >= 2:
            starts[p[0]] += 1
            ends[p[-1]] += 1
    return starts, ends


def budget_violations(D: Digraph, paths: Sequence[Sequence[int]]) -> list[tuple[int, str]]:
    """(vertex, message) for every start/end budget overrun."""
    ex = excess_vector(D)
    starts, ends = endpoint_counts(paths)
    out = []
    for v in range(D.n):
        if starts[v] > max(ex[v], 0):
            out.append((v, f"{starts[v]} paths start at vertex {v} but ex+({v}) = {max(ex[v], 0)}"))
        if ends[v] > max(-ex[v], 0):
            out.append((v, f"{ends[v]} paths end at vertex {v} but ex-({v}) = {max(-ex[v], 0)}"))
    return out


def classify_decomposition(D: Digraph, paths: Sequence[Sequence[int]]) -> Classification:
    violations: list[str] = []
    used: dict = {}
    for i, p in enumerate(paths):
        for msg in path_problems(D, p):
            violations.append(f"path {i}: {msg}")
        if violations:
            continue
        for e in path_edges(p):
            if e in used:
                violations.append(f"edge {e} used by paths {used[e]} and {i}")
            else:
                used[e] = i
    nontrivial = sum(1 for p in paths if len(p) >= 2)
    covered_v = {v for p in paths for v in p}
    if violations:
        return Classification(INVALID, tuple(violations), False, False, nontrivial)

    covers_edges = len(used) == D.m
    covers_vertices = len(covered_v) == D.n
    budget = budget_violations(D, paths)
    ex_total = sum(x for x in excess_vector(D) if x > 0)
    report = [msg for _, msg in budget]
    if covers_edges and nontrivial == ex_total:
        # an edge partition with ex(D) paths meets every budget exactly
        assert not budget
        return Classification(PERFECT, (), True, covers_vertices, nontrivial)
    if not covers_edges:
        report.append(f"{D.m - len(used)} edges uncovered")
    if nontrivial != ex_total:
        report.append(f"{nontrivial} non-trivial paths, ex(D) = {ex_total}")
    kind = PARTIAL if not budget else GENERAL
    return Classification(kind, tuple(report), covers_edges, covers_vertices, nontrivial)


@dataclass(frozen=True)
class PathDecomposition:
    """Edge-disjoint paths of ``host`` with their classification."""

    host: Digraph
    paths: tuple[Path, ...]
    kind: str = field(default=GENERAL)

    @classmethod
    def of(cls, host: Digraph, paths: Iterable[Sequence[int]]) -> "PathDecomposition":
        ps = tuple(tuple(p) for p in paths)
        return cls(host, ps, classify_decomposition(host, ps).kind)

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def nontrivial(self) -> tuple[Path, ...]:
        return tuple(p for p in self.paths if len(p) >= 2)

    def edges(self) -> list:
        return [e for p in self.paths for e in path_edges(p)]

    def to_dict(self) -> dict:
        cls_ = classify_decomposition(self.host, self.paths)
        return {
            "n": self.host.n,
            "m": self.host.m,
            "excess": sum(x for x in excess_vector(self.host) if x > 0),
            "paths": [list(p) for p in self.paths],
            "kind": cls_.kind,
            "valid": cls_.valid,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
