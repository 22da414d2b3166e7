"""Command-line front end: check, compile, generate, bench."""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from . import circuit as cir
from .boolmat import candidate_matrix
from .circuit import Circuit, CircuitError
from .dag import biadjacency
from .exact import optimal_compile
from .generators import Family, FamilySpec, SpecError, generate
from .heuristics import HeuristicConfig, dckf_compile, greedy_compile, hybrid_compile, mrv_compile
from .reducibility import is_reducible, pick_method
from .result import CompilationResult

ALGOS = ("exact", "mrv", "greedy", "hybrid", "dckf", "dckf_fqs")
CSV_COLUMNS = [
    "id", "family", "params", "n", "m", "algo", "seed", "runs", "width_out", "alpha",
    "reducibility_factor", "depth_in", "depth_out", "elapsed_ms", "optimal", "error",
]
CSV_VERSION_LINE = "# qreuse bench format 1"


def default_seed() -> int:
    raw = os.environ.get("QREUSE_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"QREUSE_SEED must be an integer, got {raw!r}")


def run_algorithm(c: Circuit, algo: str, seed: int = 0, runs: int = 10, level: int = 0,
                  budget: int | None = None) -> CompilationResult:
    if algo == "exact":
        return optimal_compile(c, budget)
    cfg = HeuristicConfig(seed=seed, runs=runs, hierarchy_level=level)
    if algo == "mrv":
        return mrv_compile(c, cfg)
    if algo == "greedy":
        return greedy_compile(c, cfg)
    if algo == "hybrid":
        return hybrid_compile(c, cfg)
    if algo == "dckf":
        return dckf_compile(c)
    if algo == "dckf_fqs":
        return dckf_compile(c, first_qubit_search=True)
    raise ValueError(f"unknown algorithm {algo!r}")


def _load_static(path: str) -> Circuit:
    return cir.normalize(cir.load(path))


# -- check -------------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        c = _load_static(args.input)
        method = pick_method(c, args.method)
        t0 = time.perf_counter()
        red = is_reducible(c, method)
        ms = (time.perf_counter() - t0) * 1000
    except (OSError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{'REDUCIBLE' if red else 'IRREDUCIBLE'} (method={method}, {ms:.3f} ms)")
    return 0 if red else 1


# -- compile -----------------------------------------------------------------

def summary_line(res: CompilationResult) -> str:
    return f"width {res.original_width} → {res.compiled_width} (r={res.reducibility_factor:.3f})"


def cmd_compile(args) -> int:
    try:
        c = _load_static(args.input)
        if args.algo == "hybrid" and args.level > c.width:
            raise ValueError(f"--level {args.level} exceeds circuit width {c.width}")
        res = run_algorithm(c, args.algo, args.seed, args.runs, args.level, args.budget)
    except (OSError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = cir.dumps(res.dynamic_circuit)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        report = sys.stdout
    else:
        sys.stdout.write(text)
        report = sys.stderr
    print(summary_line(res), file=report)
    if res.alpha == 0 and not candidate_matrix(biadjacency(c)).count():
        print("note: no candidate edges", file=report)
    if args.algo == "exact":
        print(f"optimal: {'yes' if res.optimal else 'no (node budget exhausted)'}", file=report)
        if not res.optimal:
            print("warning: node budget exhausted; result may be suboptimal", file=sys.stderr)
    print(f"algo={res.algorithm} edges={list(res.added_edges)} elapsed_ms={res.elapsed * 1000:.3f}", file=report)
    return 0


# -- generate ----------------------------------------------------------------

_GEN_KEYS = ("n", "l", "s", "w", "d", "k", "m", "p", "seed")


def _spec_from_args(args) -> FamilySpec:
    fam = Family(args.family)
    params: dict[str, Any] = {}
    for key in _GEN_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.constant:
        params["balanced"] = False
    if args.untagged:
        params["tagged"] = False
    if fam not in (Family.RANDOM, Family.RANDOM_IQP, Family.QAOA_MAXCUT):
        params.pop("seed", None)
    return FamilySpec(fam, params)


def cmd_generate(args) -> int:
    try:
        s = _spec_from_args(args)
        c = generate(s, strip_single_qubit=args.strip)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = cir.dumps(c)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"{s.label}: width {c.width}, {len(c)} instructions -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# -- bench -------------------------------------------------------------------

@dataclass(frozen=True)
class BenchJob:
    row_id: str
    family: Family
    params: dict
    algo: str
    seed: int
    runs: int
    level: int


def _expand_params(params: dict, rng: np.random.Generator) -> Iterable[dict]:
    """Lists sweep (cartesian product); {"uniform": [a, b]} draws an integer per instance."""
    fixed: dict[str, Any] = {}
    sweep_keys, sweep_vals = [], []
    for key, val in params.items():
        if isinstance(val, dict) and "uniform" in val:
            lo, hi = val["uniform"]
            fixed[key] = int(rng.integers(lo, hi + 1))
        elif isinstance(val, list):
            sweep_keys.append(key)
            sweep_vals.append(val)
        else:
            fixed[key] = val
    for combo in itertools.product(*sweep_vals):
        out = dict(fixed)
        out.update(zip(sweep_keys, combo))
        yield out


def plan_suite(suite: dict) -> list[BenchJob]:
    if not isinstance(suite, dict):
        raise ValueError("suite must be a JSON object")
    entries = suite.get("entries", [])
    jobs: list[BenchJob] = []
    for e_idx, entry in enumerate(entries):
        fam = Family(entry["family"])
        algos = entry.get("algos", ["greedy"])
        seeds = entry.get("seeds", [0])
        runs = int(entry.get("runs", 10))
        level = int(entry.get("level", 0))
        instances = int(entry.get("instances", 1))
        m_per_n = entry.get("m_per_n")
        rng = np.random.default_rng([e_idx, int(entry.get("sample_seed", 0))])
        for inst in range(instances):
            for p_idx, params in enumerate(_expand_params(entry.get("params", {}), rng)):
                params = dict(params)
                if m_per_n is not None:
                    params["m"] = int(round(m_per_n * params["n"]))
                if fam in (Family.RANDOM, Family.RANDOM_IQP, Family.QAOA_MAXCUT) and "seed" not in params:
                    params["seed"] = inst
                base = f"e{e_idx}-i{inst}-p{p_idx}"
                for algo in algos:
                    if algo not in ALGOS:
                        raise ValueError(f"unknown algorithm {algo!r}")
                    for seed in seeds:
                        jobs.append(BenchJob(base, fam, params, algo, int(seed), runs, level))
    return jobs


def run_job(job: BenchJob) -> dict:
    row = {k: "" for k in CSV_COLUMNS}
    row.update(id=job.row_id, family=job.family.value,
               params=json.dumps(job.params, sort_keys=True, separators=(",", ":")),
               algo=job.algo, seed=job.seed, runs=job.runs if job.algo == "greedy" else "")
    try:
        c = generate(FamilySpec(job.family, job.params))
        row.update(n=c.width, m=len(c), depth_in=cir.depth(c))
        res = run_algorithm(c, job.algo, job.seed, job.runs, job.level)
        row.update(
            width_out=res.compiled_width,
            alpha=res.alpha,
            reducibility_factor=f"{res.reducibility_factor:.6f}",
            depth_out=cir.depth(res.dynamic_circuit),
            elapsed_ms=f"{res.elapsed * 1000:.3f}",
            optimal="" if res.optimal is None else str(res.optimal).lower(),
        )
    except Exception as exc:  # one bad row must not sink the sweep
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def write_csv(rows: list[dict], fh) -> None:
    fh.write(CSV_VERSION_LINE + "\n")
    w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)


def read_csv(path: str) -> list[dict]:
    with open(path) as fh:
        first = fh.readline()
        if first.strip() != CSV_VERSION_LINE:
            raise ValueError(f"unexpected bench format line {first.strip()!r}")
        return list(csv.DictReader(fh))


def win_rate(rows: list[dict], ours: str = "greedy", theirs: str = "dckf") -> tuple[int, int, int]:
    """(better, tie, worse) counts of ``ours`` against ``theirs`` on shared (circuit id, seed) pairs."""
    by_id: dict[tuple[str, str], dict[str, int]] = {}
    for row in rows:
        if row.get("error") or row.get("width_out") in ("", None):
            continue
        by_id.setdefault((row["id"], str(row["seed"])), {})[row["algo"]] = int(row["width_out"])
    better = tie = worse = 0
    for widths in by_id.values():
        if ours in widths and theirs in widths:
            a, b = widths[ours], widths[theirs]
            better += a < b
            tie += a == b
            worse += a > b
    return better, tie, worse


def cmd_bench(args) -> int:
    try:
        with open(args.suite) as fh:
            suite = json.load(fh)
        jobs = plan_suite(suite)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = [run_job(j) for j in jobs]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    report = sys.stdout if args.out else sys.stderr
    errors = sum(1 for r in rows if r["error"])
    print(f"{len(rows)} rows, {errors} errors", file=report)
    algos = {r["algo"] for r in rows}
    if {"greedy", "dckf"} <= algos:
        b, t, w = win_rate(rows)
        total = b + t + w
        if total:
            print(f"greedy vs dckf: better {b}/{total} ({100 * b / total:.1f}%), tie {t}, worse {w}", file=report)
    return 0


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qreuse", description="Compile static circuits into narrower dynamic circuits via qubit reuse.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether any qubit can be reused")
    p.add_argument("input")
    p.add_argument("--method", choices=["dfs", "reach", "matrix", "auto"], default="auto")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compile", help="compile to a dynamic circuit")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGOS, default="greedy")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="exact solver node budget")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("generate", help="emit a benchmark circuit")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=str, help="secret bit string (bv, simon)")
    p.add_argument("--w", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int, help="QAOA layers")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--constant", action="store_true", help="dj: constant instead of balanced oracle")
    p.add_argument("--untagged", action="store_true", help="drop commutable group tags")
    p.add_argument("--strip", action="store_true", help="omit single-qubit gates")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    p.add_argument("suite")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "seed", "absent") is None:
        args.seed = default_seed()
    if getattr(args, "runs", 1) < 1:
        print("error: --runs must be ≥ 1", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
