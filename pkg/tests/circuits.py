"""Hand-built circuits shared by the test modules."""
from hypothesis import strategies as st

from qreuse.circuit import Circuit, from_ops, gate, measure, reset


def fig1a() -> Circuit:
    """Three qubits: H on each, then CX(0,1), CX(1,2)."""
    ops = [reset(0), reset(1), reset(2), gate("H", 0), gate("H", 1), gate("H", 2),
           gate("CX", 0, 1), gate("CX", 1, 2), measure(0), measure(1), measure(2)]
    return Circuit(3, tuple(ops))


FIG1A_B = ["111", "111", "011"]

# Irreducible, yet dropping any one CNOT makes it reducible. Found by
# exhaustive search over ordered 5-CNOT placements on 4 qubits (first hit).
MINIMAL_IRREDUCIBLE_CX = [(0, 1), (0, 2), (0, 3), (0, 1), (0, 2)]


def minimal_irreducible(skip: int | None = None) -> Circuit:
    pairs = [p for i, p in enumerate(MINIMAL_IRREDUCIBLE_CX) if i != skip]
    return from_ops(4, [gate("CX", a, b) for a, b in pairs])


# Four commuting CZs along a 5-qubit path, even bonds before odd bonds.
# Tagged as one group it compiles to 2 registers; the imposed order costs one more.
CZ_PATH = [(0, 1), (2, 3), (1, 2), (3, 4)]


def cz_path(tagged: bool = True) -> Circuit:
    ops = [gate("H", q) for q in range(5)]
    ops += [gate("CZ", a, b, group=0 if tagged else None) for a, b in CZ_PATH]
    return from_ops(5, ops)


def ghz(n: int) -> Circuit:
    return from_ops(n, [gate("H", 0)] + [gate("CX", i, i + 1) for i in range(n - 1)])


NAMES = ["H", "X", "RY", "CX", "CZ", "CCX"]


@st.composite
def random_circuits(draw, max_n=5, max_m=12, groups=True):
    n = draw(st.integers(1, max_n))
    ops = []
    for _ in range(draw(st.integers(0, max_m))):
        name = draw(st.sampled_from(NAMES))
        k = 3 if name == "CCX" else 2 if name.startswith("C") else 1
        if k > n:
            continue
        qs = draw(st.permutations(range(n)))[:k]
        param = draw(st.floats(-3.2, 3.2)) if name == "RY" else None
        group = draw(st.one_of(st.none(), st.integers(0, 2))) if groups and name == "CZ" else None
        ops.append(gate(name, *qs, param=param, group=group))
    return from_ops(n, ops)
