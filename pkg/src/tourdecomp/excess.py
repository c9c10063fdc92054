"""Vertex excess ex(v) = d+(v) - d-(v) and the aggregate ex(D)."""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph


def excess(D: Digraph, v: int) -> int:
    D.check_vertex(v)
    return D.out_degree(v) - D.in_degree(v)


def excess_vector(D: Digraph) -> list[int]:
    return [D.out_degree(v) - D.in_degree(v) for v in range(D.n)]


def total_excess(D: Digraph) -> int:
    return sum(x for x in excess_vector(D) if x > 0)


@dataclass(frozen=True)
class ExcessProfile:
    per_vertex: tuple[int, ...]
    total: int
    u_plus: frozenset[int]
    u_minus: frozenset[int]
    u_zero: frozenset[int]

    def plus(self, v: int) -> int:
        return max(self.per_vertex[v], 0)

    def minus(self, v: int) -> int:
        return max(-self.per_vertex[v], 0)

    def to_dict(self) -> dict:
        return {
            "per_vertex": list(self.per_vertex),
            "total": self.total,
            "u_plus": sorted(self.u_plus),
            "u_minus": sorted(self.u_minus),
            "u_zero": sorted(self.u_zero),
        }


def excess_profile(D: Digraph) -> ExcessProfile:
    ex = tuple(excess_vector(D))
    abs_sum = sum(abs(x) for x in ex)
    # sum of excesses is zero, so the absolute sum is always even
    assert sum(ex) == 0 and abs_sum % 2 == 0
    return ExcessProfile(
        per_vertex=ex,
        total=abs_sum // 2,
        u_plus=frozenset(v for v, x in enumerate(ex) if x > 0),
        u_minus=frozenset(v for v, x in enumerate(ex) if x < 0),
        u_zero=frozenset(v for v, x in enumerate(ex) if x == 0),
    )


def threshold_sets(D: Digraph, s: int) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices with ex+ >= s and vertices with ex- >= s."""
    if s < 0:
        raise ValueError(f"threshold must be non-negative, got {s}")
    ex = excess_vector(D)
    w_plus = frozenset(v for v, x in enumerate(ex) if max(x, 0) >= s)
    w_minus = frozenset(v for v, x in enumerate(ex) if max(-x, 0) >= s)
    return w_plus, w_minus
