import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tourdecomp.digraph import Digraph, directed_cycle, transitive_tournament  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def tt4():
    return transitive_tournament(4)


@pytest.fixture
def c3():
    return directed_cycle(3)


@pytest.fixture
def near_regular_t4():
    return Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


@st.composite
def digraphs(draw, max_n=7, oriented=True, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    states = (0, 1, 2) if oriented else (0, 1, 2, 3)
    choice = draw(st.lists(st.sampled_from(states), min_size=len(pairs), max_size=len(pairs)))
    edges = []
    for (i, j), c in zip(pairs, choice):
        if c & 1:
            edges.append((i, j))
        if c & 2:
            edges.append((j, i))
    return Digraph(n, edges)


@st.composite
def tournaments(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, [(i, j) if b else (j, i) for (i, j), b in zip(pairs, bits)])


@st.composite
def acyclic_digraphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    perm = draw(st.permutations(range(n)))
    return Digraph(n, [(i, j) for (i, j), k in zip(pairs, keep) if k]).relabel(perm)


@st.composite
def eulerian_digraphs(draw, max_n=8, max_cycles=5):
    """Edge-disjoint unions of random cycles, so in = out everywhere."""
    n = draw(st.integers(3, max_n))
    edges: set = set()
    for _ in range(draw(st.integers(1, max_cycles))):
        k = draw(st.integers(3, n))
        cyc = draw(st.permutations(range(n)))[:k]
        ce = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
        if all(e not in edges and e[::-1] not in edges for e in ce):
            edges.update(ce)
    return Digraph(n, edges)


# -- acceptance reporting ------------------------------------------------------------

ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def _line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture
def criterion():
    """Record a PASS/FAIL outcome for an acceptance criterion."""

    def record(k: int, ok: bool, detail: str) -> bool:
        ACCEPTANCE.setdefault(k, []).append((ok, detail))
        print(_line(k, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        runs = ACCEPTANCE[k]
        details = "; ".join(d for _, d in runs) if len(runs) > 1 else runs[0][1]
        terminalreporter.write_line(_line(k, all(ok for ok, _ in runs), details))
