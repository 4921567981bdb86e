"""QFT and inverse-QFT circuits over a single register.

No trailing swaps are emitted.  Instead the output register is recorded
with the opposite bit order, so after ``build_qft`` the qubit that held
weight ``2**(l-1)`` carries the relative phase ``2*pi*j / 2**l``.
"""
from __future__ import annotations

import math

from .circuit import Circuit, Register, span
from .gates import ControlledPhase, Hadamard


def fourier_qubit(register: Register, l: int) -> int:
    """Physical qubit whose Fourier-basis phase is ``2*pi*m / 2**l`` (``l`` from 1)."""
    return register.qubit(l - 1)


def build_qft(register: Register, num_qubits: int | None = None) -> Circuit:
    circuit = span(register, num_qubits=num_qubits, output_registers=[register.reversed()])
    for l in range(register.width, 0, -1):
        target = register.qubit(l - 1)
        circuit.append(Hadamard(target), counted=False)
        for k in range(2, l + 1):
            control = register.qubit(l - k)
            circuit.append(ControlledPhase(control, target, 2 * math.pi / (1 << k)), counted=False)
    return circuit


def build_iqft(register: Register, num_qubits: int | None = None) -> Circuit:
    return build_qft(register, num_qubits).inverse()
