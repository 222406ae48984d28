"""
Mutually unbiased bases for 1 to 3 qubits, and partial-tensor extensions.

Construction: the 4^n - 1 non-identity Pauli strings split into 2^n + 1
classes of 2^n - 1 mutually commuting strings; the joint eigenbasis of each
class is one basis, and eigenbases of disjoint commuting classes are mutually
unbiased. The partition is found by a deterministic backtracking search over
totally isotropic subspaces of GF(2)^2n, seeded with the pure-Z and pure-X
classes so that basis 0 is always the computational basis and basis 1 the
transversal-Hadamard basis. Remaining classes are ordered by their
lexicographically smallest member (I < X < Y < Z, plain string order).

State order inside a basis: the class generators are its greedy
lexicographically-first independent subset, reversed so the lex-largest
generator binds the most significant index bit; state j is the joint
eigenvector with generator-k eigenvalue (-1)^(bit k of j), phase-fixed so the
first nonzero amplitude is real positive.
"""

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .paulis import PauliString
from .states import MAX_QUBITS, StateVector

MAX_MUB_QUBITS = 3


@dataclass(frozen=True)
class MubSet:
    """A list of orthonormal bases on n qubits, pairwise unbiased.

    bases[b] is a 2^n x 2^n matrix whose column j is state j of basis b.
    classes[b] lists the commuting Pauli strings stabilizing basis b (absent
    for sets not produced by the Pauli-class construction, e.g. shifted sets).
    """

    n: int
    bases: tuple[np.ndarray, ...]
    classes: tuple[tuple[PauliString, ...], ...] | None = None

    def __post_init__(self):
        frozen = []
        for b in self.bases:
            m = np.asarray(b, dtype=complex)
            if m.shape != (2**self.n, 2**self.n):
                raise ValueError(f"basis matrix must be {2**self.n}x{2**self.n}, got {m.shape}")
            m = m.copy()
            m.flags.writeable = False
            frozen.append(m)
        object.__setattr__(self, "bases", tuple(frozen))

    @property
    def n_bases(self) -> int:
        return len(self.bases)

    def state(self, basis_index: int, state_index: int) -> StateVector:
        if not 0 <= basis_index < self.n_bases:
            raise ValueError(f"basis index must be in [0, {self.n_bases}), got {basis_index}")
        if not 0 <= state_index < 2**self.n:
            raise ValueError(f"state index must be in [0, {2**self.n}), got {state_index}")
        return StateVector(self.n, self.bases[basis_index][:, state_index])


@dataclass(frozen=True)
class MubCertification:
    """Result of checking orthonormality and pairwise unbiasedness."""

    n: int
    n_bases: int
    max_orthonormality_deviation: float
    max_unbiasedness_deviation: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class PartialMubSpec:
    """One K-qubit MUB state placed on a qubit subset, |0> elsewhere.

    subset is a strictly increasing tuple of 1-based qubit indices; K is its
    length. For a full sweep (K = n) the subset covers every qubit.
    """

    n: int
    subset: tuple[int, ...]
    basis_index: int
    state_index: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"register size must be in [1, {MAX_QUBITS}], got {self.n}")
        k = len(self.subset)
        if not 1 <= k <= MAX_MUB_QUBITS:
            raise ValueError(f"subset size must be in [1, {MAX_MUB_QUBITS}], got {k}")
        if list(self.subset) != sorted(set(self.subset)):
            raise ValueError(f"subset must be strictly increasing, got {self.subset}")
        if self.subset[0] < 1 or self.subset[-1] > self.n:
            raise ValueError(f"subset {self.subset} is outside qubits 1..{self.n}")
        if not 0 <= self.basis_index <= 2**k:
            raise ValueError(f"basis index must be in [0, {2**k}], got {self.basis_index}")
        if not 0 <= self.state_index < 2**k:
            raise ValueError(f"state index must be in [0, {2**k}), got {self.state_index}")

    @property
    def k(self) -> int:
        return len(self.subset)

    def label(self) -> str:
        qubits = "-".join(str(q) for q in self.subset)
        return f"b{self.basis_index}s{self.state_index}q{qubits}"


# --- Pauli-class partition ---------------------------------------------------


def _span(gens: list[tuple[int, int]]) -> set[tuple[int, int]]:
    out = {(0, 0)}
    for g in gens:
        out |= {(a[0] ^ g[0], a[1] ^ g[1]) for a in out}
    return out


def _commutes(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return (bin(p[0] & q[1]).count("1") + bin(q[0] & p[1]).count("1")) % 2 == 0


def _partition_classes(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Partition the non-identity Paulis into 2^n + 1 commuting classes.

    Returns mask pairs sorted lexicographically (by letter string) inside each
    class; classes[0] is pure Z, classes[1] pure X, the rest found lex-minimal.
    """
    strings = sorted("".join(t) for t in itertools.product("IXYZ", repeat=n))
    strings.remove("I" * n)
    masks = [(PauliString(s).x_mask, PauliString(s).z_mask) for s in strings]
    order = {m: i for i, m in enumerate(masks)}

    def by_order(cls):
        return tuple(sorted(cls, key=order.get))

    z_class = by_order(m for m in masks if m[0] == 0)
    x_class = by_order(m for m in masks if m[1] == 0)
    classes: list[tuple[tuple[int, int], ...]] = [z_class, x_class]
    uncovered = set(masks) - set(z_class) - set(x_class)

    def candidates(p):
        # n-dim commuting subspaces through p with every nonzero element uncovered;
        # pairwise-commuting generators span a commuting set (the form is bilinear)
        found = set()

        def extend(gens, span):
            if len(gens) == n:
                found.add(by_order(e for e in span if e != (0, 0)))
                return
            for q in sorted(uncovered, key=order.get):
                if q in span or not all(_commutes(q, g) for g in gens):
                    continue
                grown = span | {(a[0] ^ q[0], a[1] ^ q[1]) for a in span}
                if all(e == (0, 0) or e in uncovered for e in grown):
                    extend(gens + [q], grown)

        extend([p], _span([p]))
        return sorted(found, key=lambda cls: [order[e] for e in cls])

    def cover() -> bool:
        if not uncovered:
            return True
        p = min(uncovered, key=order.get)
        for cls in candidates(p):
            classes.append(cls)
            uncovered.difference_update(cls)
            if cover():
                return True
            uncovered.update(cls)
            classes.pop()
        return False

    if not cover():
        raise RuntimeError(f"no commuting-class partition found for n={n}")
    ordered = classes[:2] + sorted(classes[2:], key=lambda cls: min(order[e] for e in cls))
    return ordered


def _class_generators(cls, n: int, order) -> list[tuple[int, int]]:
    # greedy lex-first independent subset, reversed: lex-largest binds the MSB
    gens: list[tuple[int, int]] = []
    span = {(0, 0)}
    for m in sorted(cls, key=order.get):
        if m not in span:
            gens.append(m)
            span |= {(a[0] ^ m[0], a[1] ^ m[1]) for a in span}
        if len(gens) == n:
            break
    return gens[::-1]


def _apply_masks(x_mask: int, z_mask: int, v: np.ndarray) -> np.ndarray:
    src = np.arange(len(v)) ^ x_mask
    signs = 1 - 2 * (np.bitwise_count(src & z_mask).astype(np.int64) & 1)
    return (1j ** bin(x_mask & z_mask).count("1")) * signs * v[src]


def _joint_eigenbasis(gens: list[tuple[int, int]], n: int) -> np.ndarray:
    """Columns: stabilizer projections of computational seeds, phase-fixed."""
    d = 2**n
    cols = np.zeros((d, d), dtype=complex)
    for j in range(d):
        for seed in range(d):
            v = np.zeros(d, dtype=complex)
            v[seed] = 1.0
            for k, (x, z) in enumerate(gens):
                sign = -1.0 if (j >> (n - 1 - k)) & 1 else 1.0
                v = (v + sign * _apply_masks(x, z, v)) / 2
            norm = np.linalg.norm(v)
            if norm > 1e-6:
                v = v / norm
                lead = int(np.argmax(np.abs(v) > 1e-8))
                v = v * (np.conj(v[lead]) / abs(v[lead]))
                cols[:, j] = v
                break
        else:
            raise RuntimeError("no computational seed survived the stabilizer projection")
    return cols


_CACHE: dict[int, MubSet] = {}


def build_full_mub_set(n: int) -> MubSet:
    """All 2^n + 1 mutually unbiased bases for n in {1, 2, 3}."""
    if n not in (1, 2, 3):
        raise ValueError(f"full MUB construction is limited to n <= {MAX_MUB_QUBITS}, got n={n}")
    if n not in _CACHE:
        classes = _partition_classes(n)
        strings = sorted("".join(t) for t in itertools.product("IXYZ", repeat=n))
        strings.remove("I" * n)
        order = {(PauliString(s).x_mask, PauliString(s).z_mask): i for i, s in enumerate(strings)}
        bases = []
        letter_classes = []
        for cls in classes:
            gens = _class_generators(cls, n, order)
            bases.append(_joint_eigenbasis(gens, n))
            letter_classes.append(tuple(PauliString.from_masks(n, x, z) for x, z in cls))
        _CACHE[n] = MubSet(n=n, bases=tuple(bases), classes=tuple(letter_classes))
    return _CACHE[n]


def verify_mub_set(mubs: MubSet, tol: float = 1e-10) -> MubCertification:
    """Check every within-basis pair for orthonormality and every cross-basis
    pair for |<psi|phi>| = 1/sqrt(d), reporting worst-case deviations."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    d = 2**mubs.n
    target = 1.0 / np.sqrt(d)
    eye = np.eye(d)
    orth = 0.0
    unbias = 0.0
    for i, bi in enumerate(mubs.bases):
        orth = max(orth, float(np.max(np.abs(bi.conj().T @ bi - eye))))
        for bj in mubs.bases[i + 1:]:
            overlap = np.abs(bi.conj().T @ bj)
            unbias = max(unbias, float(np.max(np.abs(overlap - target))))
    return MubCertification(
        n=mubs.n,
        n_bases=mubs.n_bases,
        max_orthonormality_deviation=orth,
        max_unbiasedness_deviation=unbias,
        tolerance=tol,
        passed=orth < tol and unbias < tol,
    )


def enumerate_partial_specs(n: int, k: int) -> list[PartialMubSpec]:
    """Every K-qubit MUB state on every K-subset: C(n,K) * (2^K + 1) * 2^K specs,
    ordered subset-lex, then basis, then state."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"register size must be in [1, {MAX_QUBITS}], got {n}")
    if not 1 <= k <= MAX_MUB_QUBITS:
        raise ValueError(f"subset size must be in [1, {MAX_MUB_QUBITS}], got {k}")
    if k > n:
        raise ValueError(f"subset size {k} exceeds register size {n}")
    specs = []
    for subset in itertools.combinations(range(1, n + 1), k):
        for basis in range(2**k + 1):
            for state in range(2**k):
                specs.append(PartialMubSpec(n=n, subset=subset, basis_index=basis,
                                            state_index=state))
    assert len(specs) == comb(n, k) * (2**k + 1) * 2**k
    return specs


def realize_partial_state(spec: PartialMubSpec, mubs: MubSet) -> StateVector:
    """Tensor the chosen MUB state onto spec.subset with |0> on the rest.

    The MUB set must live on K qubits; MUB-state qubit k maps to register
    qubit spec.subset[k], so amplitudes scatter per the global bit convention.
    """
    if mubs.n != spec.k:
        raise ValueError(f"MUB set is on {mubs.n} qubits but spec subset has {spec.k}")
    small = mubs.state(spec.basis_index, spec.state_index).amps
    amps = np.zeros(2**spec.n, dtype=complex)
    k = spec.k
    for m in range(2**k):
        idx = 0
        for pos, qubit in enumerate(spec.subset):
            idx |= ((m >> (k - 1 - pos)) & 1) << (spec.n - qubit)
        amps[idx] = small[m]
    return StateVector(spec.n, amps)


def encode_mub_set(mubs: MubSet) -> str:
    """JSON export: {"n": n, "bases": [basis][state][amplitude] = [re, im]}."""
    import json

    doc = {
        "n": mubs.n,
        "bases": [
            [[[float(a.real), float(a.imag)] for a in basis[:, j]] for j in range(2**mubs.n)]
            for basis in mubs.bases
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
