"""Seeded instance generators.

Identical specs give identical digraphs: all randomness comes from
``numpy.random.default_rng(seed)`` and is consumed in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .digraph import Digraph, transitive_tournament

KINDS = ("transitive", "near_regular", "random_uniform", "skewed", "acyclic_random")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    bias: float | None = None  # skewed: P(i->j) for i<j; acyclic_random: edge density

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; choose from {KINDS}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.kind == "skewed":
            if self.bias is None or not 0.5 <= self.bias < 1:
                raise ValueError(f"skewed bias must lie in [0.5, 1), got {self.bias}")
        elif self.kind == "acyclic_random":
            if self.bias is not None and not 0 <= self.bias <= 1:
                raise ValueError(f"edge density must lie in [0, 1], got {self.bias}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "seed": self.seed, "bias": self.bias}


def near_regular_tournament(n: int) -> Digraph:
    """Rotational tournament i -> i+k (mod n), 1 <= k <= (n-1)/2.

    For even n the leftover antipodal pairs are oriented i -> i + n/2 for
    i < n/2, which leaves every excess at +-1.
    """
    edges = [(i, (i + k) % n) for i in range(n) for k in range(1, (n - 1) // 2 + 1)]
    if n % 2 == 0:
        edges += [(i, i + n // 2) for i in range(n // 2)]
    return Digraph(n, edges)


def _pair_draws(n: int, rng: np.random.Generator) -> list[tuple[int, int, float]]:
    draws = rng.random(n * (n - 1) // 2)
    pairs = ((i, j) for i in range(n) for j in range(i + 1, n))
    return [(i, j, float(x)) for (i, j), x in zip(pairs, draws)]


def generate(spec: GeneratorSpec) -> Digraph:
    n = spec.n
    if spec.kind == "transitive":
        return transitive_tournament(n)
    if spec.kind == "near_regular":
        return near_regular_tournament(n)
    rng = np.random.default_rng(spec.seed)
    if spec.kind in ("random_uniform", "skewed"):
        p = 0.5 if spec.kind == "random_uniform" else spec.bias
        return Digraph(n, ((i, j) if x < p else (j, i) for i, j, x in _pair_draws(n, rng)))
    density = 0.5 if spec.bias is None else spec.bias
    edges = [(i, j) for i, j, x in _pair_draws(n, rng) if x < density]
    perm = [int(v) for v in rng.permutation(n)]
    return Digraph(n, edges).relabel(perm)
