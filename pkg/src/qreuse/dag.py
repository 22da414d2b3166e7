"""DAG view of a static circuit, its root/terminal biadjacency, and emission of reuse schedules."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .boolmat import BoolMatrix, gate_update_inplace
from .circuit import Circuit, CircuitError, Instruction, Kind


class DagError(ValueError):
    """Raised for cyclic graphs or illegal added edges."""


@dataclass(frozen=True)
class CircuitDag:
    """Execution-order graph over instruction ids.

    ``roots[i]`` and ``terminals[i]`` are the source/sink vertices of qubit i.
    """

    num_vertices: int
    edges: frozenset[tuple[int, int]]
    roots: tuple[int, ...]
    terminals: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]],
                   roots: Sequence[int] = (), terminals: Sequence[int] = ()) -> "CircuitDag":
        es = frozenset((int(u), int(v)) for u, v in edges)
        succ: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in sorted(es):
            succ[u].append(v)
        return cls(num_vertices, es, tuple(roots), tuple(terminals), tuple(tuple(s) for s in succ))

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @property
    def width(self) -> int:
        return len(self.roots)

    def indegree(self) -> list[int]:
        deg = [0] * self.num_vertices
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def outdegree(self) -> list[int]:
        return [len(s) for s in self.succ]

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "CircuitDag":
        return CircuitDag.from_edges(self.num_vertices, self.edges | set(extra), self.roots, self.terminals)

    def reachable_from(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen


def build_dag(circuit: Circuit) -> CircuitDag:
    """Dependency graph honoring commutable group tags.

    On each qubit an instruction depends on its predecessor. When the
    predecessor belongs to the same group as the current instruction, the
    dependency skips back to whatever preceded that group: a single untagged
    vertex, or every member of an earlier group on that qubit.
    """
    instrs = circuit.instructions
    causal: list[list[int]] = [[] for _ in range(circuit.width)]
    edges: set[tuple[int, int]] = set()
    for ins in instrs:
        v = ins.id
        grp = ins.group
        for q in ins.qubits:
            lst = causal[q]
            if lst:
                prev = lst[-1]
                pre_group = instrs[prev].group
                if pre_group is None:
                    edges.add((prev, v))
                else:
                    linked = False
                    if grp == pre_group:
                        for u in reversed(lst):
                            cur = instrs[u].group
                            if cur != grp:
                                pre_group = cur
                                if cur is None:
                                    edges.add((u, v))
                                    linked = True
                                break
                        else:
                            pre_group = grp  # nothing before the group: no predecessor
                            linked = True
                    if not linked:
                        for u in lst:
                            if instrs[u].group == pre_group:
                                edges.add((u, v))
            lst.append(v)
    roots, terminals = _endpoints(circuit, edges)
    return CircuitDag.from_edges(len(instrs), edges, roots, terminals)


def _endpoints(circuit: Circuit, edges) -> tuple[list[int], list[int]]:
    first: list[int | None] = [None] * circuit.width
    last: list[int | None] = [None] * circuit.width
    for ins in circuit:
        for q in ins.qubits:
            if first[q] is None:
                first[q] = ins.id
            last[q] = ins.id
    if any(f is None for f in first):
        raise CircuitError("every qubit needs at least one instruction; normalize first")
    indeg = set(v for _, v in edges)
    outdeg = set(u for u, _ in edges)
    for q in range(circuit.width):
        ins_f, ins_l = circuit[first[q]], circuit[last[q]]
        if ins_f.kind is not Kind.RESET or ins_l.kind is not Kind.MEASURE:
            raise CircuitError("circuit is not normalized (missing RESET or MEASURE)")
        if first[q] in indeg or last[q] in outdeg:
            raise CircuitError(f"qubit {q}: RESET/MEASURE is not a DAG root/terminal")
    return first, last  # type: ignore[return-value]


def simplified_dag(dag: CircuitDag) -> BoolMatrix:
    """B_ij = 1 iff some path leads from roots[i] to terminals[j]."""
    n = dag.width
    term_index = {t: j for j, t in enumerate(dag.terminals)}
    b = np.zeros((n, n), dtype=bool)
    for i, r in enumerate(dag.roots):
        for v in dag.reachable_from(r):
            j = term_index.get(v)
            if j is not None:
                b[i, j] = True
    return BoolMatrix(b)


def matrix_biadjacency(circuit: Circuit) -> BoolMatrix:
    """Fold the column-OR update over every multi-qubit instruction."""
    bits = np.eye(circuit.width, dtype=bool)
    for ins in circuit:
        if len(ins.qubits) > 1:
            gate_update_inplace(bits, ins.qubits)
    return BoolMatrix(bits)


def biadjacency(circuit: Circuit) -> BoolMatrix:
    """B via the DAG when group tags matter, else via the column-OR fold."""
    if circuit.has_groups:
        return simplified_dag(build_dag(circuit))
    return matrix_biadjacency(circuit)


def topological_order(dag: CircuitDag) -> list[int]:
    """Kahn's algorithm; ready vertices are taken smallest id first."""
    indeg = dag.indegree()
    heap = [v for v in dag.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in dag.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != dag.num_vertices:
        raise DagError("cycle detected in DAG")
    return order


def qubit_edges_to_vertices(dag: CircuitDag, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Map (terminal qubit, root qubit) pairs to (terminal vertex, root vertex)."""
    return [(dag.terminals[t], dag.roots[r]) for t, r in edges]


def _check_added_edges(circuit: Circuit, dag: CircuitDag, added: Sequence[tuple[int, int]]) -> None:
    term_set = set(dag.terminals)
    root_set = set(dag.roots)
    tails, heads = set(), set()
    for t, r in added:
        if t not in term_set:
            raise DagError(f"edge tail {t} is not a terminal")
        if r not in root_set:
            raise DagError(f"edge head {r} is not a root")
        if t in tails:
            raise DagError(f"terminal {t} used by two added edges")
        if r in heads:
            raise DagError(f"root {r} used by two added edges")
        if circuit[t].qubit == circuit[r].qubit:
            raise DagError(f"edge ({t}, {r}) reuses a qubit onto itself")
        tails.add(t)
        heads.add(r)


@dataclass(frozen=True)
class Emission:
    circuit: Circuit
    order: tuple[int, ...]        # source instruction id for each emitted instruction
    register_of: tuple[int, ...]  # physical register of each original qubit


def emit_schedule(circuit: Circuit, dag: CircuitDag, added_edges: Sequence[tuple[int, int]]) -> Emission:
    """Reorder along the modified DAG and collapse reused qubits onto shared registers."""
    added = [(int(t), int(r)) for t, r in added_edges]
    _check_added_edges(circuit, dag, added)
    modified = dag.with_edges(added)
    order = topological_order(modified)

    # each reused root qubit inherits the register of the terminal feeding it
    parent = {circuit[r].qubit: circuit[t].qubit for t, r in added}

    def resolve(q: int) -> int:
        seen = set()
        while q in parent:
            if q in seen:
                raise DagError("cyclic reuse chain")
            seen.add(q)
            q = parent[q]
        return q

    logical = [resolve(q) for q in range(circuit.width)]
    # compact registers densely by first use in the emitted order
    dense: dict[int, int] = {}
    for v in order:
        for q in circuit[v].qubits:
            dense.setdefault(logical[q], len(dense))
    register_of = tuple(dense[logical[q]] for q in range(circuit.width))

    out = []
    for v in order:
        ins = circuit[v]
        out.append(Instruction(0, ins.kind, tuple(register_of[q] for q in ins.qubits), ins.gate, ins.param, None))
    return Emission(Circuit(len(dense), tuple(out)), tuple(order), register_of)


def emit_dynamic(circuit: Circuit, dag: CircuitDag, added_edges: Sequence[tuple[int, int]]) -> Circuit:
    """Compile ``circuit`` by adding (terminal id, root id) edges to ``dag``."""
    return emit_schedule(circuit, dag, added_edges).circuit


def to_dot(dag: CircuitDag, added_edges: Iterable[tuple[int, int]] = (), circuit: Circuit | None = None) -> str:
    lines = ["digraph circuit {", "  rankdir=LR;"]
    for v in dag.vertices:
        label = str(v)
        if circuit is not None:
            ins = circuit[v]
            label = f"{v}: {ins.gate or ins.kind.value} {list(ins.qubits)}"
        lines.append(f'  {v} [label="{label}"];')
    for u, v in sorted(dag.edges):
        lines.append(f"  {u} -> {v};")
    for u, v in added_edges:
        lines.append(f"  {u} -> {v} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
