"""Dense Boolean matrices and the reachability kernels built on them."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class BoolMatrix:
    """Square Boolean matrix backed by a numpy bool array.

    Instances are treated as immutable: operations return new matrices and
    the backing array is marked read-only.
    """

    __slots__ = ("bits",)

    def __init__(self, bits):
        arr = np.array(bits, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"BoolMatrix must be square and non-empty, got shape {arr.shape}")
        arr.setflags(write=False)
        self.bits = arr

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def ones(cls, n: int) -> "BoolMatrix":
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "BoolMatrix":
        a = np.zeros((n, n), dtype=bool)
        a[i, j] = True
        return cls(a)

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "BoolMatrix":
        return cls([[ch == "1" for ch in row.strip()] for row in rows if row.strip()])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BoolMatrix":
        a = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            a[i, j] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    @property
    def T(self) -> "BoolMatrix":
        return BoolMatrix(self.bits.T)

    def __getitem__(self, idx):
        v = self.bits[idx]
        return bool(v) if np.ndim(v) == 0 else v

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __le__(self, other: "BoolMatrix") -> bool:
        """Entrywise order."""
        _same_dim(self, other)
        return bool(np.all(~self.bits | other.bits))

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        _same_dim(self, other)
        return BoolMatrix(self.bits | other.bits)

    def __and__(self, other: "BoolMatrix") -> "BoolMatrix":
        _same_dim(self, other)
        return BoolMatrix(self.bits & other.bits)

    def __invert__(self) -> "BoolMatrix":
        return BoolMatrix(~self.bits)

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        return bool_product(self, other)

    def count(self) -> int:
        return int(self.bits.sum())

    def is_all_ones(self) -> bool:
        return bool(self.bits.all())

    def nonzero(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.bits))]

    def dump(self) -> str:
        return "\n".join("".join("1" if b else "0" for b in row) for row in self.bits)

    def __repr__(self) -> str:
        return f"BoolMatrix(n={self.n},\n{self.dump()})"


def _same_dim(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """(A ⊙ B)_ij = OR_l (A_il AND B_lj)."""
    _same_dim(a, b)
    prod = a.bits.astype(np.int64) @ b.bits.astype(np.int64)
    return BoolMatrix(prod > 0)


def bool_power(a: BoolMatrix, k: int) -> BoolMatrix:
    result = BoolMatrix.identity(a.n)
    for _ in range(k):
        result = bool_product(result, a)
    return result


def _check_indices(n: int, qubits: Sequence[int]) -> list[int]:
    qs = [int(q) for q in qubits]
    if len(set(qs)) != len(qs):
        raise ValueError(f"duplicate index in {qs}")
    for q in qs:
        if not 0 <= q < n:
            raise ValueError(f"index {q} outside [0, {n})")
    return qs


def gate_update_inplace(bits: np.ndarray, qubits: Sequence[int]) -> None:
    """OR the listed columns of a writable bool array together, in place."""
    qs = list(qubits)
    merged = np.logical_or.reduce(bits[:, qs], axis=1)
    bits[:, qs] = merged[:, None]


def gate_update(b: BoolMatrix, qubits: Sequence[int]) -> BoolMatrix:
    """Replace every listed column by the OR of all listed columns."""
    qs = _check_indices(b.n, qubits)
    bits = b.bits.copy()
    if qs:
        gate_update_inplace(bits, qs)
    return BoolMatrix(bits)


def gate_matrix(n: int, qubits: Sequence[int]) -> BoolMatrix:
    """I + sum of E_ij + E_ji over distinct listed pairs."""
    qs = _check_indices(n, qubits)
    a = np.eye(n, dtype=bool)
    for i in qs:
        for j in qs:
            a[i, j] = True
    return BoolMatrix(a)


def has_cycle(adj: np.ndarray) -> bool:
    """Kahn's algorithm on a square bool adjacency array."""
    n = adj.shape[0]
    indeg = adj.sum(axis=0).astype(np.int64)
    stack = [int(v) for v in np.flatnonzero(indeg == 0)]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in np.flatnonzero(adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(int(w))
    return seen != n


def is_nilpotent(a: BoolMatrix) -> bool:
    """True iff the digraph with adjacency ``a`` is acyclic."""
    return not has_cycle(a.bits)


def is_nilpotent_by_powers(a: BoolMatrix) -> bool:
    """Slow oracle: A^n == O under the Boolean product."""
    return bool_power(a, a.n).count() == 0


def candidate_matrix(b: BoolMatrix) -> BoolMatrix:
    """C_tr = NOT B_rt."""
    return BoolMatrix(~b.bits.T)


def block_matrix(b: BoolMatrix, f: BoolMatrix) -> BoolMatrix:
    """[[O, B], [F, O]]: roots 0..n-1, terminals n..2n-1."""
    _same_dim(b, f)
    n = b.n
    big = np.zeros((2 * n, 2 * n), dtype=bool)
    big[:n, n:] = b.bits
    big[n:, :n] = f.bits
    return BoolMatrix(big)


def check_selection(b: BoolMatrix, f: BoolMatrix) -> list[str]:
    """Return the list of violated edge-selection constraints (empty when valid)."""
    problems = []
    c = candidate_matrix(b)
    if not f <= c:
        problems.append("F not below candidate matrix")
    if (f.bits.sum(axis=1) > 1).any():
        problems.append("terminal used twice")
    if (f.bits.sum(axis=0) > 1).any():
        problems.append("root used twice")
    if not is_nilpotent(block_matrix(b, f)):
        problems.append("block matrix not nilpotent")
    return problems


def candidate_update_inplace(c: np.ndarray, t: int, r: int) -> None:
    """Apply the effect of adding terminal t -> root r to a candidate array.

    Terminals that cannot yet reach root r's side (zero entries in column r)
    lose every root that t could not reach (zero entries in row t); afterwards
    row t and column r are cleared.
    """
    rows_r = ~c[t, :]
    cols_t = ~c[:, r]
    c[np.ix_(cols_t, rows_r)] = False
    c[t, :] = False
    c[:, r] = False


def candidate_update(c: BoolMatrix, t: int, r: int) -> BoolMatrix:
    if not c[t, r]:
        raise ValueError(f"({t}, {r}) is not a candidate edge")
    bits = c.bits.copy()
    candidate_update_inplace(bits, t, r)
    return BoolMatrix(bits)
