import pytest

from qreuse.boolmat import BoolMatrix
from qreuse.dag import matrix_biadjacency
from qreuse.exact import optimal_compile
from qreuse.generators import (
    STRUCTURED, Family, FamilySpec, SpecError, expected_biadjacency, expected_optimal_width, generate, spec, u3r_graph,
)

GRID = [
    spec(Family.DJ, n=3), spec(Family.DJ, n=4, balanced=False), spec(Family.BV, n=4), spec(Family.BV, n=5, s="10110"),
    spec(Family.SIMON, n=2), spec(Family.SIMON, n=3), spec(Family.QFT, n=4), spec(Family.DIFFUSION, n=4),
    spec(Family.LINEAR, n=5, l=2), spec(Family.CIRCULAR, n=5, l=1), spec(Family.CIRCULAR, n=6, l=2),
    spec(Family.PAIRWISE, n=7, l=2), spec(Family.FULL, n=4, l=2), spec(Family.DIAMOND, n=3),
    spec(Family.CLUSTER, w=3, d=3), spec(Family.CLUSTER, w=1, d=4), spec(Family.ADDER, k=3),
]


def test_bv_construction():
    c = generate(spec(Family.BV, n=4, s="1111"))
    assert c.width == 5
    cx = [ins.qubits for ins in c.gates if ins.gate == "CX"]
    assert cx == [(0, 4), (1, 4), (2, 4), (3, 4)]


def test_cluster_construction():
    c = generate(spec(Family.CLUSTER, w=2, d=3))
    assert c.width == 6
    cz = [ins.qubits for ins in c.gates if ins.gate == "CZ"]
    assert cz == [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]


def test_random_is_deterministic():
    a = generate(spec(Family.RANDOM, n=10, m=15, seed=7))
    b = generate(spec(Family.RANDOM, n=10, m=15, seed=7))
    assert a == b
    assert sum(1 for ins in a.gates if ins.gate == "CX") == 15
    assert a != generate(spec(Family.RANDOM, n=10, m=15, seed=8))


def test_rotation_angles_are_explicit():
    for s in [spec(Family.LINEAR, n=4), spec(Family.DIAMOND, n=2), spec(Family.QAOA_MAXCUT, n=6)]:
        assert all(ins.param is not None for ins in generate(s).gates if ins.gate in ("RY", "GIVENS", "RZZ", "RX"))


def test_linear_closed_form():
    b = expected_biadjacency(spec(Family.LINEAR, n=4, l=1))
    assert b.dump().split() == ["1111", "1111", "0111", "0011"]


def test_full_closed_form():
    assert expected_biadjacency(spec(Family.FULL, n=5, l=3)) == BoolMatrix.ones(5)


def test_cluster_closed_form_small():
    assert expected_biadjacency(spec(Family.CLUSTER, w=2, d=2)).dump().split() == ["1111", "1111", "1011", "0111"]


@pytest.mark.parametrize("s", GRID, ids=lambda s: s.label)
def test_generator_matches_closed_form(s):
    assert matrix_biadjacency(generate(s)) == expected_biadjacency(s)


@pytest.mark.parametrize("s", GRID, ids=lambda s: s.label)
def test_exact_reaches_expected_width(s):
    assert optimal_compile(generate(s)).compiled_width == expected_optimal_width(s)


@pytest.mark.parametrize("s, width", [
    (spec(Family.PAIRWISE, n=8, l=2), 5),
    (spec(Family.CLUSTER, w=3, d=5), 4),
    (spec(Family.ADDER, k=1), 3),
    (spec(Family.BV, n=3, s="000"), 1),
])
def test_expected_optimal_width_examples(s, width):
    assert expected_optimal_width(s) == width


@pytest.mark.parametrize("family, params", [
    (Family.CLUSTER, {"w": 2, "d": 0}),
    (Family.ADDER, {"k": 0}),
    (Family.LINEAR, {"n": 1}),
    (Family.BV, {"n": 3, "s": "10"}),
    (Family.SIMON, {"n": 2, "s": "00"}),
    (Family.QAOA_MAXCUT, {"n": 7}),
    (Family.RANDOM, {"n": 4}),
    (Family.QFT, {"n": 4, "l": 2}),
])
def test_invalid_specs(family, params):
    with pytest.raises(SpecError):
        FamilySpec(family, params)


def test_unsupported_closed_forms():
    with pytest.raises(SpecError):
        expected_biadjacency(spec(Family.RANDOM, n=4, m=3))
    with pytest.raises(SpecError):
        expected_biadjacency(spec(Family.SIMON, n=3, s="101"))


def test_u3r_graph_is_cubic():
    edges = u3r_graph(10, seed=4)
    degree = [0] * 10
    for u, v in edges:
        assert u < v
        degree[u] += 1
        degree[v] += 1
    assert degree == [3] * 10


def test_qaoa_layers_tagged():
    c = generate(spec(Family.QAOA_MAXCUT, n=6, p=2))
    assert {ins.group for ins in c.gates if ins.gate == "RZZ"} == {0, 1}
    assert all(ins.group is None for ins in c.gates if ins.gate != "RZZ")
    assert not generate(spec(Family.QAOA_MAXCUT, n=6, tagged=False)).has_groups


@pytest.mark.parametrize("seed", range(8))
def test_iqp_tags_never_hurt(seed):
    tagged = generate(spec(Family.RANDOM_IQP, n=7, m=8, seed=seed))
    plain = generate(spec(Family.RANDOM_IQP, n=7, m=8, seed=seed, tagged=False))
    assert optimal_compile(tagged).compiled_width <= optimal_compile(plain).compiled_width


def test_strip_single_qubit_keeps_biadjacency():
    s = spec(Family.ADDER, k=2)
    assert matrix_biadjacency(generate(s, strip_single_qubit=True)) == matrix_biadjacency(generate(s))


def test_structured_set():
    assert Family.RANDOM not in STRUCTURED and Family.ADDER in STRUCTURED
