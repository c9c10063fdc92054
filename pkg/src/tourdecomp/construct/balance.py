"""Balanced set families.

Given f : V -> {0..m} with max f = m, build 2tm subsets T_i of V, each
containing its anchors x_i, y_i and of size at least (1 - 1/t)|V|, that
cover every v exactly f(v) + (2t - 1)m times.

The construction writes f as a sum of m indicator functions I_U, turns each
U into t sets V \\ A_j (the A_j partitioning V \\ U), and then pairs the
resulting tm sets S_i with their anchors:

    T_i = S_i | {x_i, y_i},    T_{tm+i} = V - ({x_i, y_i} - S_i).

Part sizes are integers, so |A_j| <= |V|/t alone may not cover V \\ U. Anchors
that land in A_j are added back to T_i, so only non-anchor elements count
against the size bound; parts are filled anchor-first, and for each i the
anchor pair (i or tm+i) absorbing more of the complement is put on the S side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from ..errors import InfeasibleCapsError


@dataclass(frozen=True)
class BalanceRequest:
    elements: tuple[Hashable, ...]
    f: Mapping[Hashable, int]
    t: int
    m: int
    x: tuple[Hashable, ...]  # anchors x_1..x_{2tm}
    y: tuple[Hashable, ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("elements must be distinct")
        if self.t < 1 or self.m < 1:
            raise ValueError("t and m must be positive")
        if self.t * self.m > n:
            raise ValueError(f"tm = {self.t * self.m} exceeds |V| = {n}")
        if self.t > 1 and 2 * self.t > n:
            raise ValueError(f"2t = {2 * self.t} exceeds |V| = {n}")
        if set(self.f) != set(self.elements):
            raise ValueError("f must be defined exactly on the elements")
        if min(self.f.values()) < 0 or max(self.f.values()) != self.m:
            raise ValueError(f"f must take values in 0..m with maximum m = {self.m}")
        k = self.t * self.m
        if len(self.x) != 2 * k or len(self.y) != 2 * k:
            raise ValueError(f"need {2 * k} anchor pairs")
        members = set(self.elements)
        for i in range(k):
            quad = (self.x[i], self.y[i], self.x[k + i], self.y[k + i])
            if not set(quad) <= members:
                raise ValueError(f"anchors of index {i} are not elements")
            if len(set(quad)) != 4:
                raise ValueError(f"anchors x_i, y_i, x_(tm+i), y_(tm+i) not distinct for i = {i}")

    @property
    def n(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class BalanceFamily:
    request: BalanceRequest
    sets: tuple[frozenset, ...]  # T_1..T_{2tm}

    def size_bound(self) -> Fraction:
        return Fraction((self.request.t - 1) * self.request.n, self.request.t)

    def violations(self) -> list[str]:
        """Every failed conclusion, found by direct counting."""
        req = self.request
        bad = []
        if len(self.sets) != 2 * req.t * req.m:
            bad.append(f"{len(self.sets)} sets, expected {2 * req.t * req.m}")
        want = (2 * req.t - 1) * req.m
        for v in req.elements:
            count = sum(v in T for T in self.sets)
            if count != req.f[v] + want:
                bad.append(f"{v!r} covered {count} times, expected {req.f[v] + want}")
        for i, T in enumerate(self.sets):
            if not T <= set(req.elements):
                bad.append(f"T_{i} has foreign elements")
            if len(T) < self.size_bound():
                bad.append(f"|T_{i}| = {len(T)} < {self.size_bound()}")
            if req.x[i] not in T or req.y[i] not in T:
                bad.append(f"T_{i} misses an anchor")
        return bad


def indicator_split(f: Mapping[Hashable, int], order: Sequence[Hashable], m: int) -> list[set]:
    """Sets U_1..U_m with f = sum of their indicators, sizes as equal as possible."""
    us: list[set] = [set() for _ in range(m)]
    nxt = 0
    for v in order:
        for j in range(f[v]):
            us[(nxt + j) % m].add(v)
        nxt = (nxt + f[v]) % m
    return us


def balance_sets(req: BalanceRequest) -> BalanceFamily:
    n, t, m = req.n, req.t, req.m
    k = t * m
    cap = n // t  # non-anchor elements allowed in one part
    V = frozenset(req.elements)
    rank = {v: i for i, v in enumerate(req.elements)}
    swap = [False] * k
    S: list[frozenset] = []
    for b, U in enumerate(indicator_split(req.f, req.elements, m)):
        rest = set(V - U)
        idx = range(b * t, (b + 1) * t)
        parts: dict[int, set] = {}
        for i in idx:
            pairs = [(req.x[i], req.y[i]), (req.x[k + i], req.y[k + i])]
            gains = [len({a for a in p if a in rest}) for p in pairs]
            swap[i] = gains[1] > gains[0]
            parts[i] = {a for a in pairs[swap[i]] if a in rest}
            rest -= parts[i]
        loose = sorted(rest, key=rank.__getitem__)
        for i in idx:
            take, loose = loose[:cap], loose[cap:]
            parts[i] |= set(take)
        if loose:
            raise InfeasibleCapsError(
                f"{len(loose)} elements outside U_{b} do not fit into {t} parts "
                f"of {cap} non-anchor elements",
                witness=tuple(loose),
            )
        S.extend(V - parts[i] for i in idx)

    sets: list = [None] * (2 * k)
    for i in range(k):
        lo, hi = (k + i, i) if swap[i] else (i, k + i)
        a = {req.x[lo], req.y[lo]}
        sets[lo] = frozenset(S[i] | a)
        sets[hi] = frozenset(V - (a - S[i]))
    fam = BalanceFamily(req, tuple(sets))
    bad = fam.violations()
    assert not bad, bad
    return fam
