"""Compilation result shared by all compilers."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .boolmat import BoolMatrix, check_selection
from .circuit import Circuit, Kind
from .dag import CircuitDag, build_dag, emit_schedule, qubit_edges_to_vertices


@dataclass(frozen=True)
class CompilationResult:
    """Outcome of compiling one static circuit.

    ``added_edges`` holds (terminal qubit, root qubit) pairs: the register of
    the terminal's qubit is measured, reset and handed to the root's qubit.
    ``source_ids[k]`` is the original instruction id behind emitted
    instruction k.
    """

    added_edges: tuple[tuple[int, int], ...]
    original_width: int
    dynamic_circuit: Circuit
    register_of: tuple[int, ...]
    source_ids: tuple[int, ...]
    algorithm: str
    elapsed: float
    optimal: bool | None = None

    @property
    def alpha(self) -> int:
        return len(self.added_edges)

    @property
    def compiled_width(self) -> int:
        return self.original_width - self.alpha

    @property
    def reducibility_factor(self) -> float:
        return 1.0 - self.compiled_width / self.original_width

    def selection(self) -> BoolMatrix:
        return BoolMatrix.from_edges(self.original_width, self.added_edges)

    def measure_map(self, original: Circuit) -> list[int]:
        """For each emitted MEASURE, the index of the original MEASURE it realizes."""
        meas_index = {}
        for ins in original:
            if ins.kind is Kind.MEASURE:
                meas_index[ins.id] = len(meas_index)
        return [meas_index[src] for src, ins in zip(self.source_ids, self.dynamic_circuit)
                if ins.kind is Kind.MEASURE]


def finalize(circuit: Circuit, edges: Sequence[tuple[int, int]], algorithm: str, started: float,
             optimal: bool | None = None, dag: CircuitDag | None = None) -> CompilationResult:
    dag = dag or build_dag(circuit)
    edges = tuple((int(t), int(r)) for t, r in edges)
    em = emit_schedule(circuit, dag, qubit_edges_to_vertices(dag, edges))
    return CompilationResult(
        added_edges=edges,
        original_width=circuit.width,
        dynamic_circuit=em.circuit,
        register_of=em.register_of,
        source_ids=em.order,
        algorithm=algorithm,
        elapsed=time.perf_counter() - started,
        optimal=optimal,
    )


def verify_selection(b: BoolMatrix, result: CompilationResult) -> list[str]:
    """Re-check the edge set against the selection constraints with boolmat primitives."""
    return check_selection(b, result.selection())
