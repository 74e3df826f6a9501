"""Small composed circuits shared by the scripts and tests."""

from __future__ import annotations

from .pauli import PauliString
from .tensor import (
    QUBIT,
    CircuitTensor,
    apply_on,
    bitflip_noise,
    controlled_channel,
    depolarizing_noise,
    gate,
    identity_tensor,
    pauli_channel,
    state_prep,
    tensor_controlled_pauli,
    tensor_destructive_meas,
    trace_weights,
)


def teleportation() -> CircuitTensor:
    """Noiseless one-qubit teleportation; wire 0 is the input, wire 2 the output."""
    t = identity_tensor((QUBIT,))
    t = apply_on(t, state_prep("bell"), [])
    t = apply_on(t, gate("CNOT"), [0, 1])
    t = apply_on(t, tensor_destructive_meas("X"), [0])
    t = apply_on(t, tensor_destructive_meas("Z"), [1])
    t = apply_on(t, tensor_controlled_pauli("X"), [1, 2])
    t = apply_on(t, tensor_controlled_pauli("Z"), [0, 1])
    return t


def noisy_teleportation(
    bell: str = "m",
    cnot: str = "c2",
    correction: str = "c1",
    readout: str = "r",
    traced: bool = True,
) -> CircuitTensor:
    """Teleportation with noise on every stage.

    Two-qubit noise follows the Bell preparation (``bell``) and the CNOT
    (``cnot``); both readouts flip with weight ``readout``; each classically
    controlled correction is followed by one-qubit noise (``correction``)
    when its control bit is set.
    """
    t = identity_tensor((QUBIT,))
    t = apply_on(t, state_prep("bell"), [])
    t = apply_on(t, depolarizing_noise(2, bell), [1, 2])
    t = apply_on(t, gate("CNOT"), [0, 1])
    t = apply_on(t, depolarizing_noise(2, cnot), [0, 1])
    t = apply_on(t, tensor_destructive_meas("X"), [0])
    t = apply_on(t, tensor_destructive_meas("Z"), [1])
    for bit in (0, 1):
        t = apply_on(t, bitflip_noise(readout, f"1 - {readout}"), [bit])
    for bit, p in ((1, "X"), (0, "Z")):
        noisy = apply_on(pauli_channel(PauliString.from_str(p)), depolarizing_noise(1, correction), [0])
        t = apply_on(t, controlled_channel(noisy), [bit, len(t.out_sig) - 1])
    return trace_weights(t) if traced else t
