import pytest
from hypothesis import given, strategies as st

from tourdecomp.digraph import transitive_tournament
from tourdecomp.excess import excess_vector, total_excess
from tourdecomp.generators import KINDS, GeneratorSpec, generate, near_regular_tournament


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_transitive_excess(n):
    T = generate(GeneratorSpec("transitive", n))
    assert T == transitive_tournament(n)
    assert total_excess(T) == n * n // 4


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_near_regular(n):
    T = near_regular_tournament(n)
    assert T.is_tournament
    assert sorted(excess_vector(T)) == [-1] * (n // 2) + [1] * (n // 2)
    assert total_excess(T) == n // 2


def test_odd_near_regular_is_regular():
    assert set(excess_vector(near_regular_tournament(7))) == {0}


@given(st.sampled_from(KINDS), st.integers(1, 12), st.integers(0, 2**64 - 1))
def test_deterministic(kind, n, seed):
    bias = 0.8 if kind == "skewed" else None
    spec = GeneratorSpec(kind, n, seed, bias)
    D = generate(spec)
    assert D == generate(GeneratorSpec(kind, n, seed, bias))
    if kind == "acyclic_random":
        assert D.is_acyclic
    else:
        assert D.is_tournament


def test_seeds_differ():
    a = generate(GeneratorSpec("random_uniform", 12, 1))
    b = generate(GeneratorSpec("random_uniform", 12, 2))
    assert a != b


def test_skew_raises_excess():
    mean = [total_excess(generate(GeneratorSpec("skewed", 30, s, 0.9))) for s in range(5)]
    flat = [total_excess(generate(GeneratorSpec("random_uniform", 30, s))) for s in range(5)]
    assert min(mean) > max(flat)


@pytest.mark.parametrize("kwargs", [
    dict(kind="bogus", n=4),
    dict(kind="skewed", n=4),
    dict(kind="skewed", n=4, bias=1.0),
    dict(kind="acyclic_random", n=4, bias=1.5),
    dict(kind="transitive", n=0),
    dict(kind="transitive", n=3, seed=-1),
])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        GeneratorSpec(**kwargs)
