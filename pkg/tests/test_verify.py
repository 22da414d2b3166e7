import itertools
import warnings
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qreuse.boolmat import candidate_matrix, candidate_update
from qreuse.circuit import Circuit, Kind, from_ops, gate, measure, reset
from qreuse.dag import biadjacency, build_dag, emit_dynamic, emit_schedule, matrix_biadjacency
from qreuse.generators import Family, generate, spec
from qreuse.heuristics import greedy_compile
from qreuse.verify import (
    SimulationError, assert_equivalent, exact_distribution, expand_dynamic, gate_unitary,
    group_commutation_warnings, remap_outcomes, result_equivalent, tvd,
)

from circuits import cz_path, fig1a, ghz, random_circuits


def _same_up_to_permutation(a, b) -> bool:
    n = a.n
    return any((a.bits[np.ix_(p, p)] == b.bits).all() for p in map(list, itertools.permutations(range(n))))


def test_all_zero_outcome():
    assert exact_distribution(from_ops(3, [])) == {"000": 1.0}


@pytest.mark.parametrize("s", ["101", "111", "0110"])
def test_bv_reads_secret(s):
    dist = exact_distribution(generate(spec(Family.BV, n=len(s), s=s)))
    first = Counter()
    for bits, p in dist.items():
        first[bits[:len(s)]] += p
    assert first[s] == pytest.approx(1.0, abs=1e-12)


def test_ghz_distribution():
    dist = exact_distribution(ghz(3))
    assert set(dist) == {"000", "111"}
    assert dist["000"] == pytest.approx(0.5) and dist["111"] == pytest.approx(0.5)


def test_distribution_sums_to_one():
    dist = exact_distribution(generate(spec(Family.LINEAR, n=5, l=2)))
    assert sum(dist.values()) == pytest.approx(1.0, abs=1e-12)


def test_fig1_equivalence():
    c = fig1a()
    dag = build_dag(c)
    em = emit_schedule(c, dag, [(8, 2)])
    meas_index = {ins.id: k for k, ins in enumerate(c.measurements)}
    mm = [meas_index[src] for src, ins in zip(em.order, em.circuit) if ins.kind is Kind.MEASURE]
    assert em.circuit.width == 2
    assert assert_equivalent(c, em.circuit, 1e-9, mm)


def test_self_equivalence_at_zero_tolerance():
    c = generate(spec(Family.QFT, n=3))
    assert assert_equivalent(c, c, tol=0.0)


def test_different_secrets_differ():
    a = generate(spec(Family.BV, n=3, s="111"))
    b = generate(spec(Family.BV, n=3, s="101"))
    assert not assert_equivalent(a, b)


def test_incomparable_measurement_sets():
    with pytest.raises(SimulationError):
        assert_equivalent(from_ops(2, []), from_ops(3, []))
    with pytest.raises(SimulationError):
        assert_equivalent(from_ops(2, []), from_ops(2, []), measure_map=[0, 0])


def test_mid_circuit_reset_and_remeasure():
    c = Circuit(1, (reset(0), gate("H", 0), measure(0), reset(0), gate("X", 0), measure(0)))
    dist = exact_distribution(c)
    assert dist == pytest.approx({"01": 0.5, "11": 0.5})


def test_reset_on_live_register_discards_state():
    c = Circuit(2, (reset(0), reset(1), gate("H", 0), gate("CX", 0, 1), reset(0), measure(0), measure(1)))
    assert exact_distribution(c) == pytest.approx({"00": 0.5, "01": 0.5})


def test_simulation_limits_and_errors():
    with pytest.raises(SimulationError):
        exact_distribution(from_ops(13, []))
    with pytest.raises(SimulationError):
        exact_distribution(from_ops(1, [gate("FOO", 0)]))
    with pytest.raises(SimulationError):
        exact_distribution(from_ops(1, [gate("RY", 0)]))
    with pytest.raises(SimulationError):
        gate_unitary("CX", 3)


def test_unitaries_are_unitary():
    for name, k, param in [("H", 1, None), ("CCX", 3, None), ("MCX", 4, None), ("RZZ", 2, 0.3),
                           ("GIVENS", 2, 1.1), ("CP", 2, 0.7), ("RX", 1, 2.0), ("CS", 2, None)]:
        u = gate_unitary(name, k, param)
        assert np.allclose(u.conj().T @ u, np.eye(2 ** k))


def test_remap_and_tvd():
    assert remap_outcomes({"10": 0.25, "01": 0.75}, [1, 0]) == {"01": 0.25, "10": 0.75}
    assert tvd({"0": 1.0}, {"1": 1.0}) == 1.0


def test_expand_fig1b():
    c = fig1a()
    dyn = emit_dynamic(c, build_dag(c), [(8, 2)])
    static = expand_dynamic(dyn)
    assert static.width == 3 and static.is_static
    assert _same_up_to_permutation(matrix_biadjacency(static), matrix_biadjacency(c))


def test_expand_static_is_identity():
    c = fig1a()
    assert expand_dynamic(c) == c


def test_commutation_lint():
    assert group_commutation_warnings(cz_path(tagged=True), warn=False) == []
    bad = from_ops(2, [gate("CX", 0, 1, group=0), gate("CX", 1, 0, group=0)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        msgs = group_commutation_warnings(bad)
    assert len(msgs) == 1 and len(caught) == 1


@given(random_circuits(max_n=6, max_m=10), st.data())
@settings(max_examples=40, deadline=None)
def test_emit_expand_roundtrip(c, data):
    b = biadjacency(c)
    cand = candidate_matrix(b)
    edges = []
    while cand.count() and data.draw(st.booleans()):
        t, r = data.draw(st.sampled_from(cand.nonzero()))
        edges.append((t, r))
        cand = candidate_update(cand, t, r)
    dag = build_dag(c)
    dyn = emit_dynamic(c, dag, [(dag.terminals[t], dag.roots[r]) for t, r in edges])
    static = expand_dynamic(dyn)
    assert static.width == c.width
    key = lambda ins: (ins.kind, ins.gate, ins.param)  # noqa: E731
    assert Counter(map(key, static)) == Counter(map(key, c))
    if not c.has_groups:  # tagged input: the emitted order is one representative of many
        assert _same_up_to_permutation(matrix_biadjacency(static), matrix_biadjacency(c))


@given(random_circuits(max_n=6, max_m=10))
@settings(max_examples=40, deadline=None)
def test_deferred_measurement_consistency(c):
    dyn = greedy_compile(c).dynamic_circuit
    p, q = exact_distribution(dyn), exact_distribution(expand_dynamic(dyn))
    assert tvd(p, q) <= 1e-9


@given(random_circuits(max_n=6, max_m=12))
@settings(max_examples=40, deadline=None)
def test_compiled_circuits_equivalent(c):
    assert result_equivalent(c, greedy_compile(c))
