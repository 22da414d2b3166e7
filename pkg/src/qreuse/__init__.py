"""Qubit-reuse compilation of static quantum circuits into dynamic circuits."""
from .boolmat import BoolMatrix, bool_product, candidate_matrix, gate_update, is_nilpotent
from .circuit import Circuit, CircuitError, Instruction, Kind, compose, depth, normalize, parse_circuit
from .dag import CircuitDag, build_dag, emit_dynamic, matrix_biadjacency, simplified_dag, topological_order
from .exact import brute_force_width, optimal_compile
from .generators import Family, FamilySpec, expected_biadjacency, expected_optimal_width, generate
from .heuristics import HeuristicConfig, dckf_compile, greedy_compile, hybrid_compile, mrv_compile
from .reducibility import is_reducible_dfs, is_reducible_matrix, is_reducible_reachability
from .result import CompilationResult
from .verify import assert_equivalent, exact_distribution, expand_dynamic

__version__ = "0.1.0"

__all__ = [
    "BoolMatrix",
    "bool_product",
    "candidate_matrix",
    "gate_update",
    "is_nilpotent",
    "Circuit",
    "CircuitError",
    "Instruction",
    "Kind",
    "compose",
    "depth",
    "normalize",
    "parse_circuit",
    "CircuitDag",
    "build_dag",
    "emit_dynamic",
    "matrix_biadjacency",
    "simplified_dag",
    "topological_order",
    "brute_force_width",
    "optimal_compile",
    "Family",
    "FamilySpec",
    "expected_biadjacency",
    "expected_optimal_width",
    "generate",
    "HeuristicConfig",
    "dckf_compile",
    "greedy_compile",
    "hybrid_compile",
    "mrv_compile",
    "is_reducible_dfs",
    "is_reducible_matrix",
    "is_reducible_reachability",
    "CompilationResult",
    "assert_equivalent",
    "exact_distribution",
    "expand_dynamic",
]
