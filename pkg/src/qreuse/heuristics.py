"""Polynomial-time compilers: MRV, randomized greedy, hybrid enumeration + MRV, and DCKF."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .boolmat import BoolMatrix, block_matrix, candidate_matrix, candidate_update_inplace, is_nilpotent
from .circuit import Circuit
from .dag import biadjacency, build_dag, matrix_biadjacency
from .result import CompilationResult, finalize

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class HeuristicConfig:
    seed: int = 0
    runs: int = 10
    swap_roles: bool | Literal["auto"] = "auto"
    hierarchy_level: int = 0

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be ≥ 1")
        if self.hierarchy_level < 0:
            raise ValueError("hierarchy_level must be ≥ 0")
        if self.swap_roles not in (True, False, "auto"):
            raise ValueError("swap_roles must be True, False or 'auto'")


# -- MRV ---------------------------------------------------------------------

def _mrv_forward(c: np.ndarray) -> list[tuple[int, int]]:
    c = c.copy()
    edges = []
    while c.any():
        row_sum = c.sum(axis=1)
        row_sum[row_sum == 0] = c.shape[1] + 1
        t = int(np.argmin(row_sum))
        col_sum = c.sum(axis=0)
        roots = np.flatnonzero(c[t])
        r = int(roots[np.argmin(col_sum[roots])])
        edges.append((t, r))
        candidate_update_inplace(c, t, r)
    return edges


def mrv_edges(c: np.ndarray, swap_roles: bool | str = False) -> list[tuple[int, int]]:
    """MRV on a candidate array (rows terminals, columns roots).

    With swap_roles the roles are exchanged by running on the transpose;
    "auto" runs both and keeps the larger edge set (forward wins ties).
    """
    if swap_roles is False:
        return _mrv_forward(c)
    swapped = [(t, r) for r, t in _mrv_forward(c.T)]
    if swap_roles is True:
        return swapped
    forward = _mrv_forward(c)
    return swapped if len(swapped) > len(forward) else forward


def mrv_compile(circuit: Circuit, cfg: HeuristicConfig | None = None) -> CompilationResult:
    cfg = cfg or HeuristicConfig()
    started = time.perf_counter()
    c = candidate_matrix(biadjacency(circuit)).bits
    return finalize(circuit, mrv_edges(c, cfg.swap_roles), "mrv", started)


# -- greedy ------------------------------------------------------------------

def greedy_scores(c: np.ndarray) -> np.ndarray:
    """Score of each candidate edge: entries left after its update, plus one.

    Computed for all entries at once. An update (t, r) removes row t,
    column r, and the ones in {t': C[t',r]=0} x {r': C[t,r']=0}; those three
    sets are disjoint, so the count of removed ones is additive. Non-candidate
    entries get score 0.
    """
    ci = c.astype(np.int64)
    zi = 1 - ci
    block = zi @ ci.T @ zi  # block[t, r] = ones inside the cleared rectangle
    total = ci.sum()
    score = total - block - ci.sum(axis=1)[:, None] - ci.sum(axis=0)[None, :] + 2
    return np.where(c, score, 0)


def _greedy_run(c: np.ndarray, rng: np.random.Generator) -> list[tuple[int, int]]:
    c = c.copy()
    edges = []
    while c.any():
        score = greedy_scores(c)
        best = score.max()
        ties = np.argwhere(score == best)
        t, r = (int(x) for x in ties[rng.integers(len(ties))])
        edges.append((t, r))
        candidate_update_inplace(c, t, r)
    return edges


def run_seed(seed: int, k: int) -> int:
    return (int(seed) & SEED_MASK) ^ k


def greedy_edges(c: np.ndarray, seed: int = 0, runs: int = 10) -> list[tuple[int, int]]:
    best: list[tuple[int, int]] | None = None
    for k in range(runs):
        edges = _greedy_run(c, np.random.default_rng(run_seed(seed, k)))
        if best is None or len(edges) > len(best):
            best = edges
    return best or []


def greedy_compile(circuit: Circuit, cfg: HeuristicConfig | None = None) -> CompilationResult:
    cfg = cfg or HeuristicConfig()
    started = time.perf_counter()
    c = candidate_matrix(biadjacency(circuit)).bits
    return finalize(circuit, greedy_edges(c, cfg.seed, cfg.runs), "greedy", started)


# -- hybrid ------------------------------------------------------------------

def reach_with_edges(b: BoolMatrix, edges: list[tuple[int, int]]) -> np.ndarray:
    """Root-to-terminal reachability after adding terminal->root edges.

    Depth-first search over the bipartite graph whose root->terminal arcs are
    the ones of ``b`` and whose terminal->root arcs are ``edges``.
    """
    n = b.n
    out_r = [np.flatnonzero(b.bits[i]).tolist() for i in range(n)]
    out_t: list[list[int]] = [[] for _ in range(n)]
    for t, r in edges:
        out_t[t].append(r)
    reach = np.zeros((n, n), dtype=bool)
    for start in range(n):
        seen_r = {start}
        stack = [start]
        while stack:
            r = stack.pop()
            for t in out_r[r]:
                if not reach[start, t]:
                    reach[start, t] = True
                    for r2 in out_t[t]:
                        if r2 not in seen_r:
                            seen_r.add(r2)
                            stack.append(r2)
    return reach


def hybrid_search_terminals(c: np.ndarray, level: int) -> list[int]:
    counts = c.sum(axis=1)
    live = [t for t in range(c.shape[0]) if counts[t] > 0]
    live.sort(key=lambda t: (counts[t], t))
    return live[:level]


def _hybrid_level(b: BoolMatrix, c: np.ndarray, level: int, swap_roles) -> list[tuple[int, int]]:
    n = b.n
    chosen = hybrid_search_terminals(c, level)
    if not chosen:
        return mrv_edges(c, swap_roles)
    options = [[int(r) for r in np.flatnonzero(c[t])] + [None] for t in chosen]
    best: list[tuple[int, int]] | None = None
    for combo in itertools.product(*options):
        roots = [r for r in combo if r is not None]
        if len(set(roots)) != len(roots):
            continue
        added = [(t, r) for t, r in zip(chosen, combo) if r is not None]
        if not is_nilpotent(block_matrix(b, BoolMatrix.from_edges(n, added))):
            continue
        residual = ~reach_with_edges(b, added).T
        residual[chosen, :] = False
        if roots:
            residual[:, roots] = False
        edges = added + mrv_edges(residual, swap_roles)
        if best is None or len(edges) > len(best):
            best = edges
    return best or []


def hybrid_edges(b: BoolMatrix, level: int, swap_roles: bool | str = "auto") -> list[tuple[int, int]]:
    """Exhaustive over the ``level`` most constrained terminals, MRV on the rest.

    Levels 0..level are all evaluated and the largest edge set kept (lower
    level wins ties), so the width never grows as the level rises.
    """
    c = candidate_matrix(b).bits
    best: list[tuple[int, int]] = []
    for lv in range(level + 1):
        edges = _hybrid_level(b, c, lv, swap_roles)
        if lv == 0 or len(edges) > len(best):
            best = edges
        if lv >= len(hybrid_search_terminals(c, level)):
            break
    return best


def hybrid_compile(circuit: Circuit, cfg: HeuristicConfig | None = None) -> CompilationResult:
    cfg = cfg or HeuristicConfig()
    if cfg.hierarchy_level > circuit.width:
        raise ValueError(f"hierarchy level {cfg.hierarchy_level} exceeds width {circuit.width}")
    started = time.perf_counter()
    b = biadjacency(circuit)
    return finalize(circuit, hybrid_edges(b, cfg.hierarchy_level, cfg.swap_roles), f"hybrid{cfg.hierarchy_level}", started)


# -- DCKF --------------------------------------------------------------------

def dckf_edges(b: BoolMatrix, first: int | None = None) -> list[tuple[int, int]]:
    """Causal-cone register allocation; returns (terminal qubit, root qubit) reuse edges."""
    n = b.n
    cones = [set(np.flatnonzero(b.bits[:, i]).tolist()) for i in range(n)]
    unmeasured = list(range(n))
    measured: list[int] = []
    measured_set: set[int] = set()
    covered: set[int] = set()
    register: list[int | None] = []
    occupation: list[list[int]] = []
    edges = []
    for step in range(n):
        if step == 0 and first is not None:
            nxt = first
        else:
            size = n + 1
            nxt = unmeasured[0]
            for q in unmeasured:
                u = len(covered | cones[q])
                if u < size:
                    size, nxt = u, q
        for q in sorted(cones[nxt] - measured_set):
            if q in register:
                continue
            free = [a for a, v in enumerate(register) if v is None]
            if free:
                addr = free[0]
                edges.append((occupation[addr][-1], q))
                occupation[addr].append(q)
                register[addr] = q
            else:
                register.append(q)
                occupation.append([q])
        register[register.index(nxt)] = None
        measured.append(nxt)
        measured_set.add(nxt)
        unmeasured.remove(nxt)
        covered |= cones[nxt]
    return edges


def dckf_compile(circuit: Circuit, first_qubit_search: bool = False) -> CompilationResult:
    """Causal-cone baseline. ``first_qubit_search`` (experimental) tries every forced first measurement."""
    started = time.perf_counter()
    b = matrix_biadjacency(circuit)
    if first_qubit_search:
        edges = max((dckf_edges(b, q) for q in range(circuit.width)), key=len)
    else:
        edges = dckf_edges(b)
    return finalize(circuit, edges, "dckf-fqs" if first_qubit_search else "dckf", started, dag=build_dag(circuit))
