"""
Hardware-efficient ansatz that is exactly the identity at zero parameters.

Layout: U(theta) = V(theta) * V(0)^dagger, where V is the standard stack of
single-qubit rotation layers (Ry, optionally followed by Rz, per qubit)
interleaved with CX chains (qubit k controls k+1), closed by a final rotation
layer. V(0) is the product of the bare CX chains, so prepending its inverse
makes every rotation-at-zero circuit collapse to the identity permutation, in
exact IEEE arithmetic, not merely up to tolerance. Acting on |0...0> the
prefix is a no-op, so the usual expressiveness from the all-zeros state is
unchanged.

Parameter order: layer-major, then qubit, then axis (Y before Z), with
layers + 1 rotation layers in total.
"""

from dataclasses import dataclass

import numpy as np

from .mub import MubSet
from .states import MAX_QUBITS, Gate, StateVector, apply_gate, cnot, ry, rz

_ALLOWED_AXES = (("Y",), ("Y", "Z"))


@dataclass(frozen=True)
class AnsatzSpec:
    """Shape of the circuit: register size, entangling depth, rotation axes."""

    n: int
    layers: int = 1
    rotation_axes: tuple[str, ...] = ("Y",)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"register size must be in [1, {MAX_QUBITS}], got {self.n}")
        if self.layers < 1:
            raise ValueError(f"need at least one entangling layer, got {self.layers}")
        axes = tuple(self.rotation_axes)
        if axes not in _ALLOWED_AXES:
            raise ValueError(f"rotation_axes must be ('Y',) or ('Y', 'Z'), got {axes!r}")
        object.__setattr__(self, "rotation_axes", axes)

    @property
    def parameter_count(self) -> int:
        return self.n * len(self.rotation_axes) * (self.layers + 1)


# Parameters are plain float vectors bound to a spec by length.
ParameterVector = np.ndarray


def as_parameter_vector(spec: AnsatzSpec, params) -> np.ndarray:
    vec = np.asarray(params, dtype=float)
    if vec.shape != (spec.parameter_count,):
        raise ValueError(
            f"ansatz takes {spec.parameter_count} parameters, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("parameters must be finite")
    return vec


def build_ansatz(spec: AnsatzSpec, params) -> tuple[Gate, ...]:
    """The full gate sequence for one parameter binding, application order."""
    vec = as_parameter_vector(spec, params)
    gates: list[Gate] = []
    # V(0)^dagger: the inverse of the bare CX-chain product, one chain per layer
    for _ in range(spec.layers):
        for q in range(spec.n - 1, 0, -1):
            gates.append(cnot(q, q + 1))
    k = 0
    for layer in range(spec.layers + 1):
        for q in range(1, spec.n + 1):
            for axis in spec.rotation_axes:
                gates.append(ry(vec[k], q) if axis == "Y" else rz(vec[k], q))
                k += 1
        if layer < spec.layers:
            for q in range(1, spec.n):
                gates.append(cnot(q, q + 1))
    return tuple(gates)


def prepare_state(spec: AnsatzSpec, params, initial: StateVector) -> StateVector:
    """U(params) applied to the initial state."""
    if initial.n != spec.n:
        raise ValueError(f"ansatz is on {spec.n} qubits but state has {initial.n}")
    state = initial
    for gate in build_ansatz(spec, params):
        state = apply_gate(state, gate)
    return state


def shift_state(state: StateVector, spec: AnsatzSpec, theta0) -> StateVector:
    """The ansatz-shifted state U(theta0)|psi>; at theta0 = 0 this is |psi> itself."""
    return prepare_state(spec, theta0, state)


def shift_mub_set(mubs: MubSet, spec: AnsatzSpec, theta0) -> MubSet:
    """Shift every state of every basis; unitarity keeps the set mutually unbiased."""
    if mubs.n != spec.n:
        raise ValueError(f"ansatz is on {spec.n} qubits but MUB set is on {mubs.n}")
    shifted = []
    for basis in mubs.bases:
        cols = [shift_state(StateVector(mubs.n, basis[:, j]), spec, theta0).amps
                for j in range(2**mubs.n)]
        shifted.append(np.column_stack(cols))
    return MubSet(n=mubs.n, bases=tuple(shifted))
