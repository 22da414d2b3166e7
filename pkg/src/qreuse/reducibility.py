"""Three independent deciders for whether a static circuit admits any qubit reuse."""
from __future__ import annotations

from .circuit import Circuit, CircuitError
from .dag import build_dag, matrix_biadjacency, simplified_dag


def is_reducible_dfs(circuit: Circuit) -> bool:
    """Path search over the DAG; the only decider that understands group tags."""
    return not simplified_dag(build_dag(circuit)).is_all_ones()


def _require_untagged(circuit: Circuit, method: str) -> None:
    if circuit.has_groups:
        raise CircuitError(f"{method} decider does not support commutable group tags; use the dfs method")


def reachable_sets(circuit: Circuit) -> list[set[int]]:
    """Q_i: qubits whose initial state can influence qubit i's final state."""
    sets = [{q} for q in range(circuit.width)]
    for ins in circuit:
        if len(ins.qubits) > 1:
            merged = set().union(*(sets[q] for q in ins.qubits))
            for q in ins.qubits:
                sets[q] = set(merged)
    return sets


def is_reducible_reachability(circuit: Circuit) -> bool:
    _require_untagged(circuit, "reachability")
    return any(len(s) < circuit.width for s in reachable_sets(circuit))


def is_reducible_matrix(circuit: Circuit) -> bool:
    _require_untagged(circuit, "matrix")
    return not matrix_biadjacency(circuit).is_all_ones()


METHODS = {
    "dfs": is_reducible_dfs,
    "reach": is_reducible_reachability,
    "matrix": is_reducible_matrix,
}


def pick_method(circuit: Circuit, method: str = "auto") -> str:
    if method == "auto":
        return "dfs" if circuit.has_groups else "matrix"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return method


def is_reducible(circuit: Circuit, method: str = "auto") -> bool:
    return METHODS[pick_method(circuit, method)](circuit)
