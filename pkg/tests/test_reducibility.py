import pytest
from hypothesis import given, settings, strategies as st

from qreuse.circuit import CircuitError, from_ops, gate
from qreuse.generators import Family, generate, spec
from qreuse.reducibility import (
    is_reducible, is_reducible_dfs, is_reducible_matrix, is_reducible_reachability, pick_method, reachable_sets,
)

from circuits import cz_path, minimal_irreducible, random_circuits

DECIDERS = [is_reducible_dfs, is_reducible_reachability, is_reducible_matrix]


@pytest.mark.parametrize("decide", DECIDERS)
@pytest.mark.parametrize("s, expected", [
    (spec(Family.QFT, n=4), False),
    (spec(Family.BV, n=4, s="1111"), True),
    (spec(Family.CIRCULAR, n=4, l=1), True),
    (spec(Family.CIRCULAR, n=3, l=1), False),
    (spec(Family.LINEAR, n=5, l=3), True),
    (spec(Family.LINEAR, n=5, l=4), False),
    (spec(Family.PAIRWISE, n=6, l=2), True),
    (spec(Family.PAIRWISE, n=6, l=3), False),
    (spec(Family.DIFFUSION, n=4), False),
])
def test_family_reducibility(decide, s, expected):
    assert decide(generate(s)) is expected


@pytest.mark.parametrize("decide", DECIDERS)
def test_single_cx_irreducible(decide):
    assert not decide(from_ops(2, [gate("CX", 0, 1)]))


@pytest.mark.parametrize("decide", DECIDERS)
def test_minimal_irreducible_circuit(decide):
    assert not decide(minimal_irreducible())
    for i in range(5):
        assert decide(minimal_irreducible(skip=i))


def test_reachable_sets_contain_self():
    sets = reachable_sets(from_ops(3, [gate("CX", 0, 1)]))
    assert sets == [{0, 1}, {0, 1}, {2}]


def test_tagged_circuits_route_to_dfs():
    c = cz_path(tagged=True)
    assert pick_method(c) == "dfs"
    assert pick_method(c.strip_groups()) == "matrix"
    with pytest.raises(CircuitError):
        is_reducible_matrix(c)
    with pytest.raises(CircuitError):
        is_reducible_reachability(c)
    assert is_reducible(c)
    with pytest.raises(ValueError):
        pick_method(c, "nope")


@given(random_circuits(max_n=8, max_m=16, groups=False))
@settings(max_examples=150, deadline=None)
def test_deciders_agree(c):
    assert is_reducible_dfs(c) == is_reducible_reachability(c) == is_reducible_matrix(c)


@given(random_circuits(max_n=6, max_m=12))
@settings(max_examples=60, deadline=None)
def test_tags_never_hurt_reducibility(c):
    if is_reducible_dfs(c.strip_groups()):
        assert is_reducible_dfs(c)


@given(random_circuits(max_n=6, max_m=12, groups=False), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=80, deadline=None)
def test_appending_a_gate_never_makes_reducible(c, a, b):
    n = c.width
    if n < 2 or a % n == b % n:
        return
    longer = from_ops(n, list(c.gates) + [gate("CX", a % n, b % n)])
    if not is_reducible_matrix(c):
        assert not is_reducible_matrix(longer)
