"""Exact outcome distributions for static and dynamic circuits, and dynamic-to-static expansion."""
from __future__ import annotations

import math
import warnings
from collections import defaultdict
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Instruction, Kind, normalize

MAX_LIVE = 12
MAX_MEASURE = 16
PRUNE = 1e-15


class SimulationError(ValueError):
    pass


# -- gate library ------------------------------------------------------------

_SQ2 = 1 / math.sqrt(2)
_FIXED = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "T": np.diag([1, np.exp(1j * math.pi / 4)]),
    "TDG": np.diag([1, np.exp(-1j * math.pi / 4)]),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "CS": np.diag([1, 1, 1, 1j]),
    "SWAP": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}
_ARITY = {"CX": 2, "CCX": 3, "CP": 2, "RZZ": 2, "GIVENS": 2, "RX": 1, "RY": 1, "RZ": 1}
PARAMETERIZED = frozenset({"RX", "RY", "RZ", "CP", "RZZ", "GIVENS"})
KNOWN_GATES = frozenset(_FIXED) | frozenset(_ARITY) | {"MCX"}


def _controlled_x(k: int) -> np.ndarray:
    dim = 2 ** k
    u = np.eye(dim, dtype=complex)
    u[[dim - 2, dim - 1]] = u[[dim - 1, dim - 2]]
    return u


def gate_unitary(name: str, num_qubits: int, param: float | None = None) -> np.ndarray:
    """Unitary for ``name`` acting on ``num_qubits``; the first listed qubit is most significant."""
    if name not in KNOWN_GATES:
        raise SimulationError(f"unknown gate {name!r}")
    if name in PARAMETERIZED and param is None:
        raise SimulationError(f"gate {name} needs a param")
    if name == "MCX":
        return _controlled_x(num_qubits)
    if name in _FIXED:
        u = _FIXED[name]
    elif name in ("CX", "CCX"):
        u = _controlled_x(_ARITY[name])
    else:
        th = float(param)
        c, s = math.cos(th / 2), math.sin(th / 2)
        if name == "RX":
            u = np.array([[c, -1j * s], [-1j * s, c]])
        elif name == "RY":
            u = np.array([[c, -s], [s, c]], dtype=complex)
        elif name == "RZ":
            u = np.diag([np.exp(-1j * th / 2), np.exp(1j * th / 2)])
        elif name == "CP":
            u = np.diag([1, 1, 1, np.exp(1j * th)])
        elif name == "RZZ":
            a, b = np.exp(-1j * th / 2), np.exp(1j * th / 2)
            u = np.diag([a, b, b, a])
        else:  # GIVENS: rotation in the single-excitation subspace
            c, s = math.cos(th), math.sin(th)
            u = np.array([[1, 0, 0, 0], [0, c, -s, 0], [0, s, c, 0], [0, 0, 0, 1]], dtype=complex)
    if u.shape[0] != 2 ** num_qubits:
        raise SimulationError(f"gate {name} acts on {int(math.log2(u.shape[0]))} qubits, got {num_qubits}")
    return u


# -- simulation --------------------------------------------------------------

def _apply(state: np.ndarray, u: np.ndarray, axes: list[int]) -> np.ndarray:
    k = len(axes)
    t = u.reshape((2,) * (2 * k))
    out = np.tensordot(t, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def exact_distribution(circuit: Circuit) -> dict[str, float]:
    """Outcome distribution over bitstrings, one bit per MEASURE in instruction order.

    Registers enter the state at their first use in |0>; a MEASURE splits every
    branch into its two outcomes and removes the register; a RESET on a live
    register splits into unrecorded branches that both end in |0>.
    """
    n_meas = sum(1 for ins in circuit if ins.kind is Kind.MEASURE)
    static = circuit.is_static
    if not static and n_meas > MAX_MEASURE:
        raise SimulationError(f"{n_meas} measurements exceed the limit of {MAX_MEASURE}")
    instrs = list(circuit)
    # trailing block of MEASUREs can be read off the amplitudes without branching
    tail = len(instrs)
    while tail > 0 and instrs[tail - 1].kind is Kind.MEASURE:
        tail -= 1

    live: list[int] = []
    branches: list[tuple[tuple[int, ...], np.ndarray]] = [((), np.ones((), dtype=complex))]

    def activate(q: int):
        nonlocal branches
        if q in live:
            return
        if len(live) >= MAX_LIVE:
            raise SimulationError(f"more than {MAX_LIVE} live registers")
        live.append(q)
        zero = np.array([1, 0], dtype=complex)
        branches = [(bits, np.multiply.outer(st, zero)) for bits, st in branches]

    def project(q: int, record: bool):
        nonlocal branches
        ax = live.index(q)
        nxt = []
        for bits, st in branches:
            for v in (0, 1):
                part = np.take(st, v, axis=ax)
                if np.vdot(part, part).real > PRUNE:
                    nxt.append((bits + (v,) if record else bits, part))
        live.pop(ax)
        branches = nxt

    for ins in instrs[:tail]:
        if ins.kind is Kind.RESET:
            q = ins.qubit
            if q in live:
                project(q, record=False)
            activate(q)
        elif ins.kind is Kind.MEASURE:
            activate(ins.qubit)
            project(ins.qubit, record=True)
        else:
            for q in ins.qubits:
                activate(q)
            u = gate_unitary(ins.gate, len(ins.qubits), ins.param)
            axes = [live.index(q) for q in ins.qubits]
            branches = [(bits, _apply(st, u, axes)) for bits, st in branches]

    dist: dict[str, float] = defaultdict(float)
    final = [ins.qubit for ins in instrs[tail:]]
    if len(set(final)) != len(final):
        # repeated trailing measurement on one register: fall back to branching
        for q in final:
            activate(q)
            project(q, record=True)
        final = []
    for q in final:
        activate(q)
    for bits, st in branches:
        if final:
            probs = np.abs(np.transpose(st, [live.index(q) for q in final] +
                                        [i for i, q in enumerate(live) if q not in final])) ** 2
            probs = probs.reshape((2 ** len(final), -1)).sum(axis=1)
            for idx in np.flatnonzero(probs > PRUNE):
                tail_bits = format(int(idx), f"0{len(final)}b")
                dist["".join(map(str, bits)) + tail_bits] += float(probs[idx])
        else:
            p = float(np.vdot(st, st).real)
            if p > PRUNE:
                dist["".join(map(str, bits))] += p
    return dict(dist)


def tvd(p: dict[str, float], q: dict[str, float]) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def remap_outcomes(dist: dict[str, float], measure_map: Sequence[int]) -> dict[str, float]:
    """Reorder bits: bit k of each outcome moves to position measure_map[k]."""
    out: dict[str, float] = defaultdict(float)
    for bits, prob in dist.items():
        new = [""] * len(bits)
        for k, b in enumerate(bits):
            new[measure_map[k]] = b
        out["".join(new)] += prob
    return dict(out)


def assert_equivalent(a: Circuit, b: Circuit, tol: float = 1e-9,
                      measure_map: Sequence[int] | None = None) -> bool:
    """True iff outcome distributions agree within ``tol`` in total variation.

    ``measure_map[k]`` names the MEASURE of ``a`` realized by the k-th MEASURE
    of ``b``; identity when omitted.
    """
    ma = sum(1 for ins in a if ins.kind is Kind.MEASURE)
    mb = sum(1 for ins in b if ins.kind is Kind.MEASURE)
    if ma != mb:
        raise SimulationError(f"incomparable measurement sets: {ma} vs {mb}")
    if measure_map is not None and sorted(measure_map) != list(range(mb)):
        raise SimulationError("measure_map is not a permutation of the measurements")
    pa = exact_distribution(a)
    pb = exact_distribution(b)
    if measure_map is not None:
        pb = remap_outcomes(pb, measure_map)
    return tvd(pa, pb) <= tol


def result_equivalent(original: Circuit, result, tol: float = 1e-9) -> bool:
    """Check a CompilationResult against its source circuit."""
    return assert_equivalent(original, result.dynamic_circuit, tol, result.measure_map(original))


# -- expansion ---------------------------------------------------------------

def expand_dynamic(circuit: Circuit) -> Circuit:
    """Give every mid-circuit RESET a fresh register; measurements move to the end.

    The first RESET of a register keeps the register's index. Later RESETs
    allocate indices width, width+1, ... in encounter order. MEASUREs keep
    their relative order.
    """
    n = circuit.width
    label = list(range(n))
    seen_reset = [False] * n
    body: list[Instruction] = []
    meas: list[Instruction] = []
    for ins in circuit:
        if ins.kind is Kind.RESET:
            q = ins.qubit
            if seen_reset[q]:
                label[q] = n
                n += 1
            seen_reset[q] = True
            body.append(Instruction(0, Kind.RESET, (label[q],)))
        elif ins.kind is Kind.MEASURE:
            meas.append(Instruction(0, Kind.MEASURE, (label[ins.qubit],)))
        else:
            body.append(Instruction(0, ins.kind, tuple(label[q] for q in ins.qubits), ins.gate, ins.param, ins.group))
    resets = [i for i in body if i.kind is Kind.RESET]
    gates = [i for i in body if i.kind is not Kind.RESET]
    try:
        return normalize(Circuit(n, tuple(resets + gates + meas)))
    except CircuitError as exc:
        raise CircuitError(f"cannot expand: {exc}") from exc


# -- commutation lint --------------------------------------------------------

def group_commutation_warnings(circuit: Circuit, warn: bool = True) -> list[str]:
    """Flag pairs of same-group gates on overlapping qubits that do not commute.

    Only a warning: group tags are trusted by the compiler.
    """
    by_group: dict[int, list[Instruction]] = defaultdict(list)
    for ins in circuit:
        if ins.group is not None:
            by_group[ins.group].append(ins)
    problems = []
    for grp, members in by_group.items():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                shared = set(a.qubits) & set(b.qubits)
                if not shared:
                    continue
                qs = sorted(set(a.qubits) | set(b.qubits))
                try:
                    ua = _embed(a, qs)
                    ub = _embed(b, qs)
                except SimulationError:
                    continue
                if not np.allclose(ua @ ub, ub @ ua, atol=1e-10):
                    problems.append(f"group {grp}: instructions {a.id} and {b.id} do not commute")
    if warn:
        for msg in problems:
            warnings.warn(msg, stacklevel=2)
    return problems


def _embed(ins: Instruction, qs: list[int]) -> np.ndarray:
    k = len(qs)
    u = gate_unitary(ins.gate, len(ins.qubits), ins.param)
    eye = np.eye(2 ** k, dtype=complex).reshape((2,) * (2 * k))
    axes = [qs.index(q) for q in ins.qubits]
    out = _apply(eye, u, axes)
    return out.reshape(2 ** k, 2 ** k)
