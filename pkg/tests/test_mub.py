"""MUB construction, certification, and partial-state realization."""

import itertools
import json

import numpy as np
import pytest

from dqes.mub import (
    MAX_MUB_QUBITS,
    MubSet,
    PartialMubSpec,
    build_full_mub_set,
    encode_mub_set,
    enumerate_partial_specs,
    realize_partial_state,
    verify_mub_set,
)
from dqes.states import basis_state, inner_product, states_equal, zero_state


def test_single_qubit_bases_are_the_pauli_eigenbases():
    mubs = build_full_mub_set(1)
    assert mubs.n_bases == 3
    # basis 0: computational; basis 1: |+>, |->; basis 2: |+i>, |-i>
    assert np.array_equal(mubs.bases[0], np.eye(2))
    r = 1 / np.sqrt(2)
    assert np.allclose(mubs.bases[1], np.array([[r, r], [r, -r]]), atol=1e-15)
    assert np.allclose(mubs.bases[2], np.array([[r, r], [1j * r, -1j * r]]), atol=1e-15)


def test_basis_zero_is_computational_and_basis_one_is_hadamard():
    for n in (1, 2, 3):
        mubs = build_full_mub_set(n)
        d = 2**n
        assert np.array_equal(mubs.bases[0], np.eye(d))
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        transversal = h
        for _ in range(n - 1):
            transversal = np.kron(transversal, h)
        assert np.max(np.abs(mubs.bases[1] - transversal)) < 1e-15


def test_certification_passes_for_all_supported_sizes():
    # 2^n + 1 bases of 2^n states each: 6, 20, 72 states
    expected_states = {1: 6, 2: 20, 3: 72}
    for n in (1, 2, 3):
        mubs = build_full_mub_set(n)
        cert = verify_mub_set(mubs, tol=1e-10)
        assert cert.passed
        assert cert.n_bases == 2**n + 1
        assert cert.n_bases * 2**n == expected_states[n]
        assert cert.max_orthonormality_deviation < 1e-10
        assert cert.max_unbiasedness_deviation < 1e-10


def test_cross_basis_overlaps_hit_the_unbiased_magnitude():
    mubs = build_full_mub_set(2)
    target = 0.5  # 1/sqrt(4)
    for b1, b2 in itertools.combinations(range(mubs.n_bases), 2):
        for i in range(4):
            for j in range(4):
                overlap = abs(inner_product(mubs.state(b1, i), mubs.state(b2, j)))
                assert abs(overlap - target) < 1e-10


def test_first_amplitude_phase_convention():
    # every constructed state leads with a real positive amplitude
    for n in (1, 2, 3):
        mubs = build_full_mub_set(n)
        for b in range(mubs.n_bases):
            for s in range(2**n):
                amps = mubs.state(b, s).amps
                lead = amps[np.flatnonzero(np.abs(amps) > 1e-8)[0]]
                assert abs(lead.imag) < 1e-14
                assert lead.real > 0


def test_stabilizer_classes_partition_the_pauli_group():
    for n in (1, 2, 3):
        mubs = build_full_mub_set(n)
        classes = mubs.classes
        assert classes is not None
        assert len(classes) == 2**n + 1
        seen = set()
        for cls in classes:
            assert len(cls) == 2**n - 1
            for p, q in itertools.combinations(cls, 2):
                assert p.commutes_with(q)
            seen.update(p.letters for p in cls)
        assert len(seen) == 4**n - 1
    # class 0 stabilizes the computational basis, class 1 the Hadamard basis
    mubs = build_full_mub_set(2)
    assert [p.letters for p in mubs.classes[0]] == ["IZ", "ZI", "ZZ"]
    assert [p.letters for p in mubs.classes[1]] == ["IX", "XI", "XX"]


def test_build_is_cached_and_bounded():
    assert build_full_mub_set(2) is build_full_mub_set(2)
    with pytest.raises(ValueError, match="limited to n <= 3"):
        build_full_mub_set(4)


def test_mub_set_validation():
    with pytest.raises(ValueError, match="must be 2x2"):
        MubSet(n=1, bases=(np.eye(4),))
    mubs = build_full_mub_set(1)
    with pytest.raises(ValueError, match="basis index"):
        mubs.state(3, 0)
    with pytest.raises(ValueError, match="state index"):
        mubs.state(0, 2)
    with pytest.raises(ValueError, match="tolerance must be positive"):
        verify_mub_set(mubs, tol=0.0)


def test_basis_matrices_are_read_only():
    mubs = build_full_mub_set(2)
    with pytest.raises(ValueError):
        mubs.bases[0][0, 0] = 2.0


def test_partial_spec_label_format():
    spec = PartialMubSpec(n=8, subset=(1, 2, 8), basis_index=0, state_index=7)
    assert spec.label() == "b0s7q1-2-8"
    assert spec.k == 3
    full = PartialMubSpec(n=2, subset=(1, 2), basis_index=4, state_index=3)
    assert full.label() == "b4s3q1-2"


def test_partial_spec_validation():
    with pytest.raises(ValueError, match="strictly increasing"):
        PartialMubSpec(n=4, subset=(2, 1), basis_index=0, state_index=0)
    with pytest.raises(ValueError, match="outside qubits"):
        PartialMubSpec(n=4, subset=(3, 5), basis_index=0, state_index=0)
    with pytest.raises(ValueError, match="subset size"):
        PartialMubSpec(n=8, subset=(1, 2, 3, 4), basis_index=0, state_index=0)
    with pytest.raises(ValueError, match="basis index"):
        PartialMubSpec(n=4, subset=(1, 2), basis_index=5, state_index=0)
    with pytest.raises(ValueError, match="state index"):
        PartialMubSpec(n=4, subset=(1, 2), basis_index=0, state_index=4)


def test_partial_spec_counts():
    # C(n,K) * (2^K + 1) * 2^K
    assert len(enumerate_partial_specs(1, 1)) == 6
    assert len(enumerate_partial_specs(2, 2)) == 20
    assert len(enumerate_partial_specs(10, 2)) == 900
    assert len(enumerate_partial_specs(8, 3)) == 4032


def test_partial_spec_enumeration_order():
    specs = enumerate_partial_specs(3, 2)
    assert specs[0].subset == (1, 2) and specs[0].basis_index == 0 and specs[0].state_index == 0
    assert specs[1].state_index == 1
    assert specs[4].basis_index == 1
    # subsets advance last: (1,2) block is 5 * 4 = 20 specs long
    assert specs[20].subset == (1, 3)


def test_partial_spec_bounds():
    with pytest.raises(ValueError, match="subset size must be in"):
        enumerate_partial_specs(8, 4)
    with pytest.raises(ValueError, match="exceeds register size"):
        enumerate_partial_specs(2, 3)
    with pytest.raises(ValueError, match="register size"):
        enumerate_partial_specs(13, 2)


def test_realize_places_computational_states_by_subset():
    # basis 0, state 3 on qubits (1, 3) of a 3-qubit register: |1 0 1> = index 5
    mubs = build_full_mub_set(2)
    spec = PartialMubSpec(n=3, subset=(1, 3), basis_index=0, state_index=3)
    assert states_equal(realize_partial_state(spec, mubs), basis_state(3, 5))


def test_realize_scatters_superposition_amplitudes():
    # |-> on qubit 2 of three: amplitudes on indices 000 and 010
    mubs = build_full_mub_set(1)
    spec = PartialMubSpec(n=3, subset=(2,), basis_index=1, state_index=1)
    amps = realize_partial_state(spec, mubs).amps
    r = 1 / np.sqrt(2)
    assert abs(amps[0] - r) < 1e-15
    assert abs(amps[2] + r) < 1e-15
    assert np.count_nonzero(amps) == 2


def test_realized_states_are_orthonormal_within_a_basis():
    mubs = build_full_mub_set(2)
    specs = [PartialMubSpec(n=4, subset=(2, 4), basis_index=3, state_index=s) for s in range(4)]
    states = [realize_partial_state(sp, mubs) for sp in specs]
    for i in range(4):
        for j in range(4):
            expected = 1.0 if i == j else 0.0
            assert abs(abs(inner_product(states[i], states[j])) - expected) < 1e-12


def test_full_subset_realization_matches_the_mub_state():
    mubs = build_full_mub_set(2)
    for b in range(5):
        for s in range(4):
            spec = PartialMubSpec(n=2, subset=(1, 2), basis_index=b, state_index=s)
            assert states_equal(realize_partial_state(spec, mubs), mubs.state(b, s))


def test_realize_checks_subset_size():
    mubs = build_full_mub_set(2)
    spec = PartialMubSpec(n=4, subset=(1,), basis_index=0, state_index=0)
    with pytest.raises(ValueError, match="MUB set is on 2 qubits but spec subset has 1"):
        realize_partial_state(spec, mubs)


def test_encode_mub_set_round_trips_amplitudes():
    mubs = build_full_mub_set(1)
    doc = json.loads(encode_mub_set(mubs))
    assert doc["n"] == 1
    assert len(doc["bases"]) == 3
    for b, basis in enumerate(doc["bases"]):
        for s, state in enumerate(basis):
            amps = np.array([re + 1j * im for re, im in state])
            assert np.allclose(amps, mubs.bases[b][:, s])


def test_zero_tail_state_from_unit_subset():
    # a 1-qubit computational pick leaves the register in a pure basis state
    mubs = build_full_mub_set(1)
    spec = PartialMubSpec(n=5, subset=(5,), basis_index=0, state_index=1)
    assert states_equal(realize_partial_state(spec, mubs), basis_state(5, 1))
    assert realize_partial_state(
        PartialMubSpec(n=5, subset=(1,), basis_index=0, state_index=0), mubs
    ).amps[0] == 1.0


def test_max_mub_qubits_constant():
    assert MAX_MUB_QUBITS == 3


def test_zero_state_is_every_basis_zero_member():
    # state 0 of basis 0 is |0...0> for every n
    for n in (1, 2, 3):
        mubs = build_full_mub_set(n)
        assert states_equal(mubs.state(0, 0), zero_state(n))
