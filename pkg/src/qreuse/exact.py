"""Optimal compilation by branch and bound over the candidate matrix, plus a brute-force oracle."""
from __future__ import annotations

import itertools
import time

import numpy as np

from .boolmat import BoolMatrix, block_matrix, candidate_matrix, is_nilpotent
from .circuit import Circuit
from .dag import biadjacency, build_dag
from .heuristics import mrv_edges
from .result import CompilationResult, finalize

DEFAULT_NODE_BUDGET = 10_000_000
BRUTE_FORCE_MAX_N = 8


def _to_bitrows(c: np.ndarray) -> list[int]:
    rows = []
    for row in c:
        v = 0
        for j in np.flatnonzero(row):
            v |= 1 << int(j)
        rows.append(v)
    return rows


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _update(rows: list[int], n: int, t: int, r: int) -> list[int]:
    """Bitset version of the candidate update for edge (t, r)."""
    full = (1 << n) - 1
    keep = rows[t]  # roots t can still take; complement gets cleared below
    rbit = 1 << r
    out = rows[:]
    for k in range(n):
        if not out[k] & rbit:
            out[k] &= keep
        out[k] &= ~rbit & full
    out[t] = 0
    return out


def _max_matching(rows: list[int]) -> int:
    """Kuhn's augmenting paths on the bipartite candidate graph."""
    match_root: dict[int, int] = {}

    def augment(t: int, seen: set[int]) -> bool:
        for r in _bits(rows[t]):
            if r in seen:
                continue
            seen.add(r)
            if r not in match_root or augment(match_root[r], seen):
                match_root[r] = t
                return True
        return False

    size = 0
    for t, row in enumerate(rows):
        if row and augment(t, set()):
            size += 1
    return size


class _Search:
    def __init__(self, n: int, budget: int):
        self.n = n
        self.budget = budget
        self.nodes = 0
        self.best: list[tuple[int, int]] = []
        self.exhausted = False

    def run(self, rows: list[int], chosen: list[tuple[int, int]]) -> None:
        if self.exhausted:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        live = [(bin(v).count("1"), t) for t, v in enumerate(rows) if v]
        if not live:
            return
        if len(chosen) + _max_matching(rows) <= len(self.best):
            return
        _, t = min(live)
        col_count = [0] * self.n
        for v in rows:
            for r in _bits(v):
                col_count[r] += 1
        for r in sorted(_bits(rows[t]), key=lambda r: (col_count[r], r)):
            chosen.append((t, r))
            self.run(_update(rows, self.n, t, r), chosen)
            chosen.pop()
        skipped = rows[:]
        skipped[t] = 0
        self.run(skipped, chosen)


def solve_max_selection(b: BoolMatrix, node_budget: int | None = None) -> tuple[list[tuple[int, int]], bool]:
    """Largest valid edge set for biadjacency ``b``; second item is True when proven optimal."""
    c = candidate_matrix(b).bits
    search = _Search(b.n, DEFAULT_NODE_BUDGET if node_budget is None else node_budget)
    search.best = mrv_edges(c)
    search.run(_to_bitrows(c), [])
    return search.best, not search.exhausted


def optimal_compile(circuit: Circuit, node_budget: int | None = None) -> CompilationResult:
    started = time.perf_counter()
    dag = build_dag(circuit)
    b = biadjacency(circuit)
    edges, proven = solve_max_selection(b, node_budget)
    return finalize(circuit, edges, "exact", started, optimal=proven, dag=dag)


def _matchings(rows: list[list[int]], terms: list[int], k: int):
    """All partial matchings of size k inside the candidate lists."""
    for subset in itertools.combinations(terms, k):
        def assign(i, used, acc):
            if i == len(subset):
                yield list(acc)
                return
            t = subset[i]
            for r in rows[t]:
                if r not in used:
                    used.add(r)
                    acc.append((t, r))
                    yield from assign(i + 1, used, acc)
                    acc.pop()
                    used.discard(r)
        yield from assign(0, set(), [])


def brute_force_width(circuit: Circuit) -> int:
    """Minimum width by exhaustive enumeration of candidate matchings (n ≤ 8)."""
    n = circuit.width
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n ≤ {BRUTE_FORCE_MAX_N}, got {n}")
    b = biadjacency(circuit)
    c = candidate_matrix(b)
    rows = [[int(r) for r in np.flatnonzero(c.bits[t])] for t in range(n)]
    terms = [t for t in range(n) if rows[t]]
    for k in range(len(terms), 0, -1):
        for m in _matchings(rows, terms, k):
            if is_nilpotent(block_matrix(b, BoolMatrix.from_edges(n, m))):
                return n - k
    return n
