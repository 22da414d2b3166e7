"""Parametric circuit families with closed-form biadjacency matrices and known optimal widths.

Rotation angles are always written into the generated circuit, drawn from a
generator seeded by the family parameters, so downstream simulation sees
non-trivial amplitudes while compilation ignores them.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from .boolmat import BoolMatrix, bool_power
from .circuit import Circuit, Instruction, gate, normalize


class Family(str, Enum):
    DJ = "dj"
    BV = "bv"
    SIMON = "simon"
    QFT = "qft"
    DIFFUSION = "diffusion"
    LINEAR = "linear"
    CIRCULAR = "circular"
    PAIRWISE = "pairwise"
    FULL = "full"
    DIAMOND = "diamond"
    CLUSTER = "cluster"
    ADDER = "adder"
    QAOA_MAXCUT = "qaoa_maxcut"
    RANDOM = "random"
    RANDOM_IQP = "random_iqp"


# family -> (required keys, optional keys with defaults)
_PARAMS: dict[Family, tuple[tuple[str, ...], dict[str, Any]]] = {
    Family.DJ: (("n",), {"balanced": True}),
    Family.BV: (("n",), {"s": None}),
    Family.SIMON: (("n",), {"s": None}),
    Family.QFT: (("n",), {}),
    Family.DIFFUSION: (("n",), {}),
    Family.LINEAR: (("n",), {"l": 1}),
    Family.CIRCULAR: (("n",), {"l": 1}),
    Family.PAIRWISE: (("n",), {"l": 1}),
    Family.FULL: (("n",), {"l": 1}),
    Family.DIAMOND: (("n",), {}),
    Family.CLUSTER: (("w", "d"), {}),
    Family.ADDER: (("k",), {}),
    Family.QAOA_MAXCUT: (("n",), {"p": 1, "seed": 0, "tagged": True}),
    Family.RANDOM: (("n", "m"), {"seed": 0}),
    Family.RANDOM_IQP: (("n", "m"), {"seed": 0, "tagged": True}),
}

STRUCTURED = frozenset({
    Family.DJ, Family.BV, Family.SIMON, Family.QFT, Family.DIFFUSION, Family.LINEAR,
    Family.CIRCULAR, Family.PAIRWISE, Family.FULL, Family.DIAMOND, Family.CLUSTER, Family.ADDER,
})


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        required, optional = _PARAMS[fam]
        unknown = set(self.params) - set(required) - set(optional)
        if unknown:
            raise SpecError(f"{fam.value}: unknown parameter(s) {sorted(unknown)}")
        missing = [k for k in required if self.params.get(k) is None]
        if missing:
            raise SpecError(f"{fam.value}: missing parameter(s) {missing}")
        merged = dict(optional)
        merged.update({k: v for k, v in self.params.items() if v is not None})
        object.__setattr__(self, "params", merged)
        _validate(fam, merged)

    def __getitem__(self, key):
        return self.params[key]

    def __hash__(self):
        return hash((self.family, tuple(sorted((k, str(v)) for k, v in self.params.items()))))

    @property
    def label(self) -> str:
        body = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family.value}({body})"


def spec(family: str | Family, **params) -> FamilySpec:
    return FamilySpec(Family(family), params)


def _int(fam, name, v, lo):
    if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < lo:
        raise SpecError(f"{fam.value}: {name} must be an integer ≥ {lo}, got {v!r}")


def _secret(n: int, s) -> str:
    if s is None:
        return "1" * n
    s = str(s)
    if len(s) != n or set(s) - {"0", "1"}:
        raise SpecError(f"secret must be a {n}-character bit string, got {s!r}")
    return s


def _validate(fam: Family, p: dict) -> None:
    if fam in (Family.CLUSTER,):
        _int(fam, "w", p["w"], 1)
        _int(fam, "d", p["d"], 1)
        if p["w"] * p["d"] < 2:
            raise SpecError("cluster needs at least 2 qubits")
        return
    if fam is Family.ADDER:
        _int(fam, "k", p["k"], 1)
        return
    lo = {Family.DIAMOND: 1, Family.QAOA_MAXCUT: 4}.get(fam, 2)
    _int(fam, "n", p["n"], lo)
    if fam in (Family.LINEAR, Family.CIRCULAR, Family.PAIRWISE, Family.FULL):
        _int(fam, "l", p["l"], 1)
    if fam in (Family.BV, Family.SIMON):
        p["s"] = _secret(p["n"], p.get("s"))
    if fam is Family.SIMON and "1" not in p["s"]:
        raise SpecError("simon secret must contain a 1")
    if fam is Family.QAOA_MAXCUT:
        if p["n"] % 2:
            raise SpecError("3-regular graphs need an even number of vertices")
        _int(fam, "p", p["p"], 1)
    if fam in (Family.RANDOM, Family.RANDOM_IQP):
        _int(fam, "m", p["m"], 0)
    if "seed" in p:
        _int(fam, "seed", p["seed"], 0)


def width_of(s: FamilySpec) -> int:
    p = s.params
    return {
        Family.DJ: lambda: p["n"] + 1,
        Family.BV: lambda: p["n"] + 1,
        Family.SIMON: lambda: 2 * p["n"],
        Family.DIAMOND: lambda: 2 * p["n"],
        Family.CLUSTER: lambda: p["w"] * p["d"],
        Family.ADDER: lambda: 3 * p["k"] + 1,
    }.get(s.family, lambda: p["n"])()


# -- construction ------------------------------------------------------------

class _Builder:
    def __init__(self, s: FamilySpec):
        self.ops: list[Instruction] = []
        digest = zlib.crc32(s.label.encode())
        self.rng = np.random.default_rng(digest)

    def angle(self) -> float:
        return float(self.rng.uniform(0.0, 2.0 * math.pi))

    def add(self, name: str, *qubits: int, param: float | None = None, group: int | None = None):
        self.ops.append(gate(name, *qubits, param=param, group=group))

    def layer(self, name: str, qubits, rotation: bool = False):
        for q in qubits:
            self.add(name, q, param=self.angle() if rotation else None)


def _dj(b: _Builder, p):
    n = p["n"]
    b.layer("H", range(n))
    b.add("X", n)
    b.add("H", n)
    if p["balanced"]:
        flips = [q for q in range(n) if q % 2 == 0]
        b.layer("X", flips)
        for i in range(n):
            b.add("CX", i, n)
        b.layer("X", flips)
    else:
        b.add("X", n)
    b.layer("H", range(n))


def _bv(b: _Builder, p):
    n, s = p["n"], p["s"]
    b.layer("H", range(n))
    b.add("X", n)
    b.add("H", n)
    for i in range(n):
        if s[i] == "1":
            b.add("CX", i, n)
    b.layer("H", range(n))


def _simon(b: _Builder, p):
    n, s = p["n"], p["s"]
    j0 = s.index("1")
    b.layer("H", range(n))
    for i in range(n):
        b.add("CX", i, n + i)
    for k in range(n):
        if s[k] == "1":
            b.add("CX", j0, n + k)
    b.layer("H", range(n))


def _qft(b: _Builder, p):
    n = p["n"]
    for j in range(n):
        b.add("H", j)
        for k in range(2, n - j + 1):
            b.add("CP", j + k - 1, j, param=2 * math.pi / 2 ** k)
    for i in range(n // 2):
        b.add("SWAP", i, n - 1 - i)


def _diffusion(b: _Builder, p):
    n = p["n"]
    b.layer("H", range(n))
    b.layer("X", range(n))
    b.add("H", n - 1)
    b.add("MCX", *range(n))
    b.add("H", n - 1)
    b.layer("X", range(n))
    b.layer("H", range(n))


def _entangler(pairs_fn):
    def build(b: _Builder, p):
        n = p["n"]
        for _ in range(p["l"]):
            b.layer("RY", range(n), rotation=True)
            for i, j in pairs_fn(n):
                b.add("CX", i, j)
    return build


def _linear_pairs(n):
    return [(i, i + 1) for i in range(n - 1)]


def _circular_pairs(n):
    return _linear_pairs(n) + [(n - 1, 0)]


def _pairwise_pairs(n):
    return [(i, i + 1) for i in range(0, n - 1, 2)] + [(i, i + 1) for i in range(1, n - 1, 2)]


def _full_pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _diamond(b: _Builder, p):
    n = p["n"]
    b.layer("X", range(n))
    for d in range(2 * n - 1):
        r = d if d <= n - 1 else 2 * n - 2 - d
        for k in range(n - 1 - r, n + r, 2):
            b.add("GIVENS", k, k + 1, param=b.angle())


def _cluster(b: _Builder, p):
    w, d = p["w"], p["d"]
    b.layer("H", range(w * d))
    for c in range(d):
        for r in range(w - 1):
            b.add("CZ", c * w + r, c * w + r + 1)
        if c < d - 1:
            for r in range(w):
                b.add("CZ", c * w + r, (c + 1) * w + r)


def _adder(b: _Builder, p):
    k = p["k"]
    b.layer("H", [q for m in range(k) for q in (3 * m + 1, 3 * m + 2)])
    for m in range(k):
        c, a, bb, cn = 3 * m, 3 * m + 1, 3 * m + 2, 3 * m + 3
        b.add("CCX", a, bb, cn)
        b.add("CX", a, bb)
        b.add("CCX", c, bb, cn)
        b.add("CX", c, bb)


def u3r_graph(n: int, seed: int, max_tries: int = 10_000) -> list[tuple[int, int]]:
    """Uniform random 3-regular graph via the pairing model with rejection."""
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), 3)
    for _ in range(max_tries):
        perm = rng.permutation(points)
        edges = set()
        ok = True
        for u, v in zip(perm[0::2], perm[1::2]):
            u, v = int(min(u, v)), int(max(u, v))
            if u == v or (u, v) in edges:
                ok = False
                break
            edges.add((u, v))
        if ok:
            return sorted(edges)
    raise SpecError(f"no simple 3-regular graph found on {n} vertices")


def _qaoa(b: _Builder, p):
    n = p["n"]
    edges = u3r_graph(n, p["seed"])
    b.layer("H", range(n))
    for layer in range(p["p"]):
        gamma, beta = b.angle(), b.angle()
        for u, v in edges:
            b.add("RZZ", u, v, param=gamma, group=layer if p["tagged"] else None)
        for q in range(n):
            b.add("RX", q, param=beta)


def _random(b: _Builder, p):
    n, m = p["n"], p["m"]
    rng = np.random.default_rng(p["seed"])
    b.layer("RY", range(n), rotation=True)
    for _ in range(m):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        b.add("CX", i, j)


def _random_iqp(b: _Builder, p):
    n, m = p["n"], p["m"]
    rng = np.random.default_rng(p["seed"])
    grp = 0 if p["tagged"] else None
    b.layer("H", range(n))
    for _ in range(m):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        b.add("CS", i, j, group=grp)
        if rng.random() < 0.5:
            b.add("T", int(rng.integers(n)), group=grp)
    b.layer("H", range(n))


_BUILDERS = {
    Family.DJ: _dj,
    Family.BV: _bv,
    Family.SIMON: _simon,
    Family.QFT: _qft,
    Family.DIFFUSION: _diffusion,
    Family.LINEAR: _entangler(_linear_pairs),
    Family.CIRCULAR: _entangler(_circular_pairs),
    Family.PAIRWISE: _entangler(_pairwise_pairs),
    Family.FULL: _entangler(_full_pairs),
    Family.DIAMOND: _diamond,
    Family.CLUSTER: _cluster,
    Family.ADDER: _adder,
    Family.QAOA_MAXCUT: _qaoa,
    Family.RANDOM: _random,
    Family.RANDOM_IQP: _random_iqp,
}


def generate(s: FamilySpec, strip_single_qubit: bool = False) -> Circuit:
    b = _Builder(s)
    _BUILDERS[s.family](b, s.params)
    c = normalize(Circuit(width_of(s), tuple(b.ops)))
    return c.without_single_qubit_gates() if strip_single_qubit else c


# -- closed forms ------------------------------------------------------------

def _from_predicate(n: int, pred) -> BoolMatrix:
    return BoolMatrix([[bool(pred(i, j)) for j in range(n)] for i in range(n)])


def _adder_b(k: int) -> BoolMatrix:
    n = 3 * k + 1
    a = np.zeros((n, n), dtype=bool)
    a[0:4, :] = True
    for m in range(1, k):
        a[3 * m + 1:3 * m + 4, 3 * m:] = True
    for j in range(k):
        a[0:3 * j + 1, 3 * j + 1] = False
    return BoolMatrix(a)


def _cluster_b(w: int, d: int) -> BoolMatrix:
    def dk(k):
        return np.array([[j >= max(i - k - 1, 0) for j in range(w)] for i in range(w)], dtype=bool)

    eye = np.eye(w, dtype=bool)
    out = np.zeros((w * d, w * d), dtype=bool)
    for i in range(d):
        if i >= 1:
            out[i * w:(i + 1) * w, (i - 1) * w:i * w] |= eye
        for j in range(d - i):
            out[i * w:(i + 1) * w, (i + j) * w:(i + j + 1) * w] |= dk(j)
    return BoolMatrix(out)


def _pairwise_b(n: int, l: int) -> BoolMatrix:
    a = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if abs(i - j) <= 2 * l - 1:
                a[i, j] = True
    for i in range(0, n - 2 * l):
        if i % 2 == 0:
            a[i, i + 2 * l] = True
        else:
            a[i + 2 * l, i] = True
    return BoolMatrix(a)


def _dj_like_b(n: int, s: str) -> BoolMatrix:
    # inputs i with s_i = 1 feed the ancilla n in ascending order
    ones = [i for i in range(n) if s[i] == "1"]
    a = np.eye(n + 1, dtype=bool)
    for idx, i in enumerate(ones):
        a[i, n] = True
        a[n, i] = True
        for j in ones[idx + 1:]:
            a[i, j] = True
    return BoolMatrix(a)


def expected_biadjacency(s: FamilySpec) -> BoolMatrix:
    """Closed-form B for structured families (all-ones secrets for SIMON)."""
    p = s.params
    fam = s.family
    if fam is Family.DJ:
        n = p["n"]
        return _dj_like_b(n, "1" * n if p["balanced"] else "0" * n)
    if fam is Family.BV:
        return _dj_like_b(p["n"], p["s"])
    if fam is Family.SIMON:
        n = p["n"]
        if p["s"] != "1" * n:
            raise SpecError("closed form is available only for the all-ones secret")
        e = lambda i, j: np.eye(1, 4, 2 * i + j).reshape(2, 2).astype(bool)  # noqa: E731
        low = np.eye(n, dtype=bool)
        low[1:, 0] = True
        upper = np.triu(np.ones((n, n), dtype=bool))
        return BoolMatrix(np.kron(e(0, 0) | e(1, 0), low) | np.kron(e(0, 1) | e(1, 1), upper))
    if fam in (Family.QFT, Family.DIFFUSION, Family.FULL):
        return BoolMatrix.ones(p["n"])
    if fam is Family.LINEAR:
        n, l = p["n"], p["l"]
        return _from_predicate(n, lambda i, j: j >= max(i - l, 0))
    if fam is Family.CIRCULAR:
        n = p["n"]
        one = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(max(i - 2, 0), n):
                one[i, (j + 1) % n] = True
        return bool_power(BoolMatrix(one), p["l"])
    if fam is Family.PAIRWISE:
        return _pairwise_b(p["n"], p["l"])
    if fam is Family.DIAMOND:
        n = p["n"]
        return _from_predicate(2 * n, lambda i, j: j <= i + n if i < n else j >= i - n)
    if fam is Family.CLUSTER:
        return _cluster_b(p["w"], p["d"])
    if fam is Family.ADDER:
        return _adder_b(p["k"])
    raise SpecError(f"no closed-form biadjacency for {fam.value}")


def expected_optimal_width(s: FamilySpec) -> int:
    p = s.params
    fam = s.family
    if fam is Family.DJ:
        return 2 if p["balanced"] else 1
    if fam is Family.BV:
        return 2 if "1" in p["s"] else 1
    if fam is Family.SIMON:
        return 3
    if fam in (Family.QFT, Family.DIFFUSION, Family.FULL):
        return p["n"]
    if fam is Family.LINEAR:
        n, l = p["n"], p["l"]
        return l + 1 if l <= n - 2 else n
    if fam is Family.CIRCULAR:
        n, l = p["n"], p["l"]
        return 3 if n >= 4 and l == 1 else n
    if fam is Family.PAIRWISE:
        n, l = p["n"], p["l"]
        return 2 * l + 1 if l <= math.ceil(n / 2) - 1 else n
    if fam is Family.DIAMOND:
        return p["n"] + 1
    if fam is Family.CLUSTER:
        w, d = p["w"], p["d"]
        if d == 1:
            return 2 if w >= 3 else w
        return w + 1
    if fam is Family.ADDER:
        return 3 if p["k"] == 1 else 4
    raise SpecError(f"no known optimal width for {fam.value}")
