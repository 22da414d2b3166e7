"""
Instruction-level circuit representation.

A circuit is an ordered list of instructions over ``width`` qubit registers.
Each instruction is a quartet-like record (id, kind, qubits, param) plus an
optional commutable-group tag. Instruction ids always equal their position in
the circuit; every constructor re-densifies them.

The on-disk format is a JSON object with one instruction per line::

    {"width": 2,
     "instructions": [
      {"id": 0, "type": "RESET", "gate": null, "qubits": [0]},
      ...
     ]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence


class CircuitError(ValueError):
    """Raised for malformed circuits or documents."""


class DynamicInputError(CircuitError):
    """Raised when a static-only operation receives a dynamic circuit."""


class Kind(str, Enum):
    RESET = "RESET"
    MEASURE = "MEASURE"
    GATE = "GATE"


@dataclass(frozen=True)
class Instruction:
    id: int
    kind: Kind
    qubits: tuple[int, ...]
    gate: str | None = None
    param: float | None = None
    group: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if not self.qubits:
            raise CircuitError(f"instruction {self.id} acts on no qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"instruction {self.id} has duplicate qubits {list(self.qubits)}")
        if self.kind is Kind.GATE:
            if not self.gate:
                raise CircuitError(f"instruction {self.id}: GATE needs a gate name")
        else:
            if len(self.qubits) != 1:
                raise CircuitError(f"instruction {self.id}: {self.kind.value} acts on exactly one qubit")
            if self.param is not None:
                raise CircuitError(f"instruction {self.id}: {self.kind.value} carries no param")
            if self.group is not None:
                raise CircuitError(f"instruction {self.id}: {self.kind.value} cannot carry a group tag")
            object.__setattr__(self, "gate", None)

    @property
    def is_gate(self) -> bool:
        return self.kind is Kind.GATE

    @property
    def qubit(self) -> int:
        return self.qubits[0]

    def to_dict(self) -> dict:
        d = {"id": self.id, "type": self.kind.value, "gate": self.gate, "qubits": list(self.qubits)}
        if self.param is not None:
            d["param"] = self.param
        if self.group is not None:
            d["group"] = self.group
        return d


def reset(q: int) -> Instruction:
    return Instruction(0, Kind.RESET, (q,))


def measure(q: int) -> Instruction:
    return Instruction(0, Kind.MEASURE, (q,))


def gate(name: str, *qubits: int, param: float | None = None, group: int | None = None) -> Instruction:
    return Instruction(0, Kind.GATE, tuple(qubits), name.upper(), param, group)


@dataclass(frozen=True)
class Circuit:
    width: int
    instructions: tuple[Instruction, ...] = field(default=())

    def __post_init__(self):
        if self.width < 1:
            raise CircuitError("width must be positive")
        instrs = []
        for pos, ins in enumerate(self.instructions):
            for q in ins.qubits:
                if not 0 <= q < self.width:
                    raise CircuitError(f"instruction {pos}: qubit {q} outside [0, {self.width})")
            instrs.append(ins if ins.id == pos else replace(ins, id=pos))
        object.__setattr__(self, "instructions", tuple(instrs))

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    def __getitem__(self, i: int) -> Instruction:
        return self.instructions[i]

    @property
    def gates(self) -> tuple[Instruction, ...]:
        return tuple(ins for ins in self.instructions if ins.is_gate)

    @property
    def measurements(self) -> tuple[Instruction, ...]:
        return tuple(ins for ins in self.instructions if ins.kind is Kind.MEASURE)

    @property
    def has_groups(self) -> bool:
        return any(ins.group is not None for ins in self.instructions)

    @property
    def is_static(self) -> bool:
        try:
            _check_static(self)
        except DynamicInputError:
            return False
        return True

    def strip_groups(self) -> "Circuit":
        return Circuit(self.width, tuple(replace(ins, group=None) for ins in self.instructions))

    def without_single_qubit_gates(self) -> "Circuit":
        keep = tuple(ins for ins in self.instructions if not (ins.is_gate and len(ins.qubits) == 1))
        return Circuit(self.width, keep)


def _check_static(circuit: Circuit) -> None:
    # per qubit: at most one RESET, before any other use; nothing after MEASURE
    used = [False] * circuit.width
    reset_seen = [False] * circuit.width
    measured = [False] * circuit.width
    for ins in circuit:
        for q in ins.qubits:
            if measured[q]:
                raise DynamicInputError(f"instruction {ins.id} uses qubit {q} after its MEASURE (dynamic input)")
        if ins.kind is Kind.RESET:
            q = ins.qubit
            if used[q] or reset_seen[q]:
                raise DynamicInputError(f"mid-circuit RESET at instruction {ins.id} (dynamic input)")
            reset_seen[q] = True
        elif ins.kind is Kind.MEASURE:
            measured[ins.qubit] = True
        for q in ins.qubits:
            used[q] = True


def normalize(circuit: Circuit) -> Circuit:
    """Wrap a static circuit in one leading RESET and one trailing MEASURE per qubit.

    Existing RESETs move to the front and existing MEASUREs to the back, both
    keeping their relative order; missing ones are added in qubit order. The
    gate subsequence is preserved exactly.
    """
    _check_static(circuit)
    resets = [ins for ins in circuit if ins.kind is Kind.RESET]
    gates = [ins for ins in circuit if ins.is_gate]
    meas = [ins for ins in circuit if ins.kind is Kind.MEASURE]
    have_r = {ins.qubit for ins in resets}
    have_m = {ins.qubit for ins in meas}
    resets += [reset(q) for q in range(circuit.width) if q not in have_r]
    meas += [measure(q) for q in range(circuit.width) if q not in have_m]
    return Circuit(circuit.width, tuple(resets + gates + meas))


def is_normalized(circuit: Circuit) -> bool:
    try:
        return normalize(circuit) == circuit
    except DynamicInputError:
        return False


def compose(c1: Circuit, c2: Circuit) -> Circuit:
    """Run the gates of ``c2`` after those of ``c1``: c1's resets, both gate lists, c2's measurements."""
    if c1.width != c2.width:
        raise CircuitError(f"width mismatch: {c1.width} vs {c2.width}")
    c1, c2 = normalize(c1), normalize(c2)
    body = (
        [ins for ins in c1 if ins.kind is Kind.RESET]
        + list(c1.gates)
        + list(c2.gates)
        + [ins for ins in c2 if ins.kind is Kind.MEASURE]
    )
    return Circuit(c1.width, tuple(body))


def depth(circuit: Circuit) -> int:
    """Longest chain of instructions linked through shared qubits (group tags ignored)."""
    level = [0] * circuit.width
    best = 0
    for ins in circuit:
        d = 1 + max(level[q] for q in ins.qubits)
        for q in ins.qubits:
            level[q] = d
        best = max(best, d)
    return best


# -- serialization -----------------------------------------------------------

def dumps(circuit: Circuit) -> str:
    lines = [json.dumps(ins.to_dict()) for ins in circuit]
    body = ",\n  ".join(lines)
    if body:
        body = "\n  " + body + "\n "
    return f'{{"width": {circuit.width},\n "instructions": [{body}]}}\n'


def _instruction_from_dict(pos: int, d: dict) -> Instruction:
    if not isinstance(d, dict):
        raise CircuitError(f"instruction {pos} is not an object")
    try:
        kind = Kind(d["type"])
    except (KeyError, ValueError) as exc:
        raise CircuitError(f"instruction {pos}: bad or missing type") from exc
    qubits = d.get("qubits")
    if isinstance(qubits, int):
        qubits = [qubits]
    if not isinstance(qubits, list) or not all(isinstance(q, int) and not isinstance(q, bool) for q in qubits):
        raise CircuitError(f"instruction {pos}: qubits must be a list of integers")
    param = d.get("param")
    if param is not None and not isinstance(param, (int, float)):
        raise CircuitError(f"instruction {pos}: param must be a number")
    group = d.get("group")
    if group is not None and (not isinstance(group, int) or isinstance(group, bool)):
        raise CircuitError(f"instruction {pos}: group must be an integer")
    name = d.get("gate")
    if name is not None:
        name = str(name).upper()
    return Instruction(pos, kind, tuple(qubits), name, None if param is None else float(param), group)


def parse_circuit(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitError(f"malformed circuit document: {exc}") from exc
    if not isinstance(doc, dict) or "width" not in doc or "instructions" not in doc:
        raise CircuitError("circuit document needs 'width' and 'instructions'")
    width = doc["width"]
    if not isinstance(width, int) or isinstance(width, bool) or width < 1:
        raise CircuitError("width must be a positive integer")
    if not isinstance(doc["instructions"], list):
        raise CircuitError("'instructions' must be a list")
    instrs = tuple(_instruction_from_dict(i, d) for i, d in enumerate(doc["instructions"]))
    return Circuit(width, instrs)


def load(path) -> Circuit:
    with open(path) as fh:
        return parse_circuit(fh.read())


def save(circuit: Circuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(circuit))


def from_ops(width: int, ops: Iterable[Instruction | tuple], wrap: bool = True) -> Circuit:
    """Build a circuit from instructions or ``(name, q0, q1, ...)`` tuples.

    With ``wrap`` the result is normalized.
    """
    instrs: list[Instruction] = []
    for op in ops:
        if isinstance(op, Instruction):
            instrs.append(op)
        else:
            name, *qs = op
            instrs.append(gate(name, *qs))
    c = Circuit(width, tuple(instrs))
    return normalize(c) if wrap else c


def gate_signature(circuit: Circuit) -> list[tuple]:
    """Multiset-friendly view of instruction content (kind, gate, param)."""
    return sorted(((ins.kind.value, ins.gate or "", ins.param if ins.param is not None else 0.0) for ins in circuit))


__all__: Sequence[str] = [
    "CircuitError", "DynamicInputError", "Kind", "Instruction", "Circuit",
    "reset", "measure", "gate", "normalize", "is_normalized", "compose", "depth",
    "dumps", "parse_circuit", "load", "save", "from_ops", "gate_signature",
]
