"""
Pauli strings, weighted-sum observables, and expectation values.

A Pauli string is a letter sequence over IXYZ, one letter per qubit, leftmost
letter on qubit 1. Internally each string carries two bitmasks in the usual
symplectic encoding: x_mask marks X and Y positions, z_mask marks Z and Y
positions, with qubit q on bit n - q. Two strings commute iff the symplectic
form parity(x1 & z2) xor parity(x2 & z1) vanishes.

Observables are real-weighted sums of Pauli strings. They canonicalize on
construction (duplicate strings merged, exact zeros dropped, terms in
lexicographic order) so hashing, sampling order, and file round-trips are
deterministic.
"""

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .states import StateVector, apply_gate, hadamard, s_dagger

_LETTERS = frozenset("IXYZ")


@dataclass(frozen=True)
class PauliString:
    letters: str
    x_mask: int = field(init=False, compare=False)
    z_mask: int = field(init=False, compare=False)

    def __post_init__(self):
        if not self.letters:
            raise ValueError("Pauli string must have at least one letter")
        bad = set(self.letters) - _LETTERS
        if bad:
            pos = next(i for i, c in enumerate(self.letters) if c in bad)
            raise ValueError(
                f"invalid Pauli letter {self.letters[pos]!r} at position {pos} in {self.letters!r}")
        n = len(self.letters)
        x = z = 0
        for k, c in enumerate(self.letters):
            bit = 1 << (n - 1 - k)
            if c in "XY":
                x |= bit
            if c in "ZY":
                z |= bit
        object.__setattr__(self, "x_mask", x)
        object.__setattr__(self, "z_mask", z)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def weight(self) -> int:
        return int(bin(self.x_mask | self.z_mask).count("1"))

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError(f"string lengths differ: {self.n} vs {other.n}")
        overlap = bin(self.x_mask & other.z_mask).count("1") + bin(other.x_mask & self.z_mask).count("1")
        return overlap % 2 == 0

    @staticmethod
    def from_masks(n: int, x_mask: int, z_mask: int) -> "PauliString":
        out = []
        for k in range(n):
            bit = 1 << (n - 1 - k)
            xa, za = bool(x_mask & bit), bool(z_mask & bit)
            out.append("Y" if xa and za else "X" if xa else "Z" if za else "I")
        return PauliString("".join(out))


def pauli_apply(pauli: PauliString, state: StateVector) -> StateVector:
    """P|psi> without building the 2^n x 2^n matrix.

    Per basis label b: X/Y positions flip bits, Y and Z positions contribute
    (-1)^bit, and each Y contributes a factor i.
    """
    if pauli.n != state.n:
        raise ValueError(f"Pauli string has {pauli.n} letters but state has {state.n} qubits")
    src = np.arange(state.dim) ^ pauli.x_mask
    signs = 1 - 2 * (np.bitwise_count(src & pauli.z_mask).astype(np.int64) & 1)
    y_count = bin(pauli.x_mask & pauli.z_mask).count("1")
    amps = (1j**y_count) * signs * state.amps[src]
    return StateVector(state.n, amps)


@dataclass(frozen=True)
class Observable:
    """sum_i coeff_i * P_i with real coefficients, canonical on construction."""

    n: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"observable needs at least one qubit, got n={self.n}")
        merged: dict[str, float] = {}
        for coeff, pauli in self.terms:
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"coefficient must be finite, got {coeff!r}")
            if pauli.n != self.n:
                raise ValueError(
                    f"term {pauli.letters!r} has {pauli.n} letters, observable is on {self.n} qubits")
            merged[pauli.letters] = merged.get(pauli.letters, 0.0) + coeff
        canon = tuple(
            (c, PauliString(s)) for s, c in sorted(merged.items()) if c != 0.0)
        object.__setattr__(self, "terms", canon)

    @staticmethod
    def from_strings(n: int, pairs) -> "Observable":
        """Build from (coeff, letters) pairs."""
        return Observable(n, tuple((c, PauliString(s)) for c, s in pairs))

    def norm_bound(self) -> float:
        """sum |coeff|, an upper bound on the spectral norm."""
        return float(sum(abs(c) for c, _ in self.terms))


def expectation_exact(obs: Observable, state: StateVector) -> float:
    """<psi|H|psi> by direct Pauli application, exact up to float arithmetic."""
    if obs.n != state.n:
        raise ValueError(f"observable is on {obs.n} qubits but state has {state.n}")
    total = 0.0 + 0.0j
    for coeff, pauli in obs.terms:
        total += coeff * np.vdot(state.amps, pauli_apply(pauli, state).amps)
    if abs(total.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {total.imag:.3e}")
    return float(total.real)


def expectation_sampled(obs: Observable, state: StateVector, shots: int,
                        seed: int) -> tuple[float, float]:
    """Finite-shot estimate of <H> and its standard error.

    Each term is measured on a rotated copy of the state: H on X positions,
    S-dagger then H on Y positions, nothing on Z positions; the Z-basis sample
    parity over the term's support gives the +/-1 outcomes. Identity terms
    enter the total exactly with zero error. Deterministic given (seed, shots).
    """
    if obs.n != state.n:
        raise ValueError(f"observable is on {obs.n} qubits but state has {state.n}")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    total = 0.0
    variance = 0.0
    for coeff, pauli in obs.terms:
        if pauli.is_identity:
            total += coeff
            continue
        rotated = state
        for q in range(1, state.n + 1):
            letter = pauli.letters[q - 1]
            if letter == "X":
                rotated = apply_gate(rotated, hadamard(q))
            elif letter == "Y":
                rotated = apply_gate(rotated, s_dagger(q))
                rotated = apply_gate(rotated, hadamard(q))
        probs = np.abs(rotated.amps) ** 2
        probs = probs / probs.sum()
        outcomes = rng.choice(state.dim, size=shots, p=probs)
        support = pauli.x_mask | pauli.z_mask
        values = 1 - 2 * (np.bitwise_count(outcomes & support).astype(np.int64) & 1)
        mean = float(values.mean())
        total += coeff * mean
        if shots > 1:
            variance += coeff**2 * float(values.var(ddof=1)) / shots
    return total, float(np.sqrt(variance))


def observable_matrix(obs: Observable) -> np.ndarray:
    """Dense 2^n x 2^n Hermitian matrix of the observable."""
    mats = {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    dim = 2**obs.n
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, pauli in obs.terms:
        m = mats[pauli.letters[0]]
        for c in pauli.letters[1:]:
            m = np.kron(m, mats[c])
        out += coeff * m
    return out


# --- JSON codec ------------------------------------------------------------
#
# File format: {"n": <int>, "terms": [{"coeff": <number>, "pauli": "<IXYZ string>"}, ...]}


def encode_observable(obs: Observable) -> str:
    doc = {
        "n": obs.n,
        "terms": [{"coeff": c, "pauli": p.letters} for c, p in obs.terms],
    }
    return json.dumps(doc, indent=2) + "\n"


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed in observable files")


def decode_observable(text: str) -> Observable:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ValueError(f"expected a JSON object at the top level, got {type(doc).__name__}")
    if "n" not in doc:
        raise ValueError("missing required key 'n'")
    if "terms" not in doc:
        raise ValueError("missing required key 'terms'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"'n' must be a positive integer, got {n!r}")
    terms_doc = doc["terms"]
    if not isinstance(terms_doc, list):
        raise ValueError(f"'terms' must be an array, got {type(terms_doc).__name__}")
    terms = []
    for i, entry in enumerate(terms_doc):
        if not isinstance(entry, dict):
            raise ValueError(f"terms[{i}] must be an object, got {type(entry).__name__}")
        if "coeff" not in entry or "pauli" not in entry:
            raise ValueError(f"terms[{i}] needs both 'coeff' and 'pauli'")
        coeff = entry["coeff"]
        if isinstance(coeff, bool) or not isinstance(coeff, (int, float)):
            raise ValueError(f"terms[{i}].coeff must be a number, got {coeff!r}")
        letters = entry["pauli"]
        if not isinstance(letters, str):
            raise ValueError(f"terms[{i}].pauli must be a string, got {letters!r}")
        bad = set(letters) - _LETTERS
        if bad:
            pos = next(k for k, c in enumerate(letters) if c in bad)
            raise ValueError(f"terms[{i}].pauli: invalid letter {letters[pos]!r} at position {pos}")
        if len(letters) != n:
            raise ValueError(f"terms[{i}].pauli has {len(letters)} letters, expected n={n}")
        terms.append((float(coeff), PauliString(letters)))
    return Observable(n, tuple(terms))


def save_observable(obs: Observable, path) -> None:
    with open(path, "w") as f:
        f.write(encode_observable(obs))


def load_observable(path) -> Observable:
    with open(path) as f:
        text = f.read()
    try:
        return decode_observable(text)
    except ValueError as e:
        raise ValueError(f"{path}: {e}") from None


def observable_hash(obs: Observable) -> str:
    """sha256 of the canonical encoding; stable identity for reports and manifests."""
    return hashlib.sha256(encode_observable(obs).encode()).hexdigest()
