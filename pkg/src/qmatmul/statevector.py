"""Dense statevector simulation for the package's gate set."""
from __future__ import annotations

import cmath
import math
from typing import TYPE_CHECKING

import numpy as np

from .errors import QubitCapError, RangeError, StructuralError
from .gates import CCPhase, ControlledPhase, Gate, Hadamard, PauliX, Phase, Swap

if TYPE_CHECKING:
    from .circuit import Circuit, Register

DEFAULT_MAX_QUBITS = 26
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def check_qubit_cap(num_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> None:
    if num_qubits > max_qubits:
        raise QubitCapError(
            f"{num_qubits} qubits exceeds the cap of {max_qubits} "
            f"({16 << num_qubits} bytes of amplitudes)"
        )


class StateVector:
    """Amplitudes over ``2**num_qubits`` computational basis states.

    Basis index bit ``q`` is the value of qubit ``q``.
    """

    def __init__(self, amplitudes, *, max_qubits: int = DEFAULT_MAX_QUBITS):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128).reshape(-1)
        size = amps.size
        if size == 0 or size & (size - 1):
            raise StructuralError(f"amplitude count {size} is not a power of two")
        self.num_qubits = size.bit_length() - 1
        check_qubit_cap(self.num_qubits, max_qubits)
        self.amplitudes = amps

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), max_qubits=self.num_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


def init_basis_state(
    num_qubits: int, basis_index: int = 0, *, max_qubits: int = DEFAULT_MAX_QUBITS
) -> StateVector:
    if num_qubits < 1:
        raise RangeError(f"num_qubits must be >= 1, got {num_qubits}")
    check_qubit_cap(num_qubits, max_qubits)
    if not 0 <= basis_index < (1 << num_qubits):
        raise RangeError(f"basis index {basis_index} outside 0..{(1 << num_qubits) - 1}")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(amps, max_qubits=max_qubits)


def _split(amps: np.ndarray, num_qubits: int, qubits: tuple[int, ...]):
    """View ``amps`` with a length-2 axis per qubit in ``qubits``.

    Returns the view and a function mapping ``{qubit: bit}`` to an index
    tuple selecting that slice.
    """
    order = sorted(qubits, reverse=True)
    shape = []
    upper = num_qubits
    for q in order:
        shape.append(1 << (upper - q - 1))
        shape.append(2)
        upper = q
    shape.append(1 << upper)
    view = amps.reshape(shape)
    axis = {q: 2 * i + 1 for i, q in enumerate(order)}

    def index(bits: dict[int, int]) -> tuple:
        idx: list = [slice(None)] * len(shape)
        for q, b in bits.items():
            idx[axis[q]] = b
        return tuple(idx)

    return view, index


def _apply_inplace(amps: np.ndarray, num_qubits: int, gate: Gate) -> None:
    view, index = _split(amps, num_qubits, gate.qubits)
    if isinstance(gate, Phase):
        view[index({gate.target: 1})] *= cmath.exp(1j * gate.angle)
    elif isinstance(gate, ControlledPhase):
        view[index({gate.control: 1, gate.target: 1})] *= cmath.exp(1j * gate.angle)
    elif isinstance(gate, CCPhase):
        sel = index({gate.control1: 1, gate.control2: 1, gate.target: 1})
        view[sel] *= cmath.exp(1j * gate.angle)
    elif isinstance(gate, Hadamard):
        i0, i1 = index({gate.target: 0}), index({gate.target: 1})
        v0 = view[i0].copy()
        v1 = view[i1]
        view[i0] = (v0 + v1) * _INV_SQRT2
        view[i1] = (v0 - v1) * _INV_SQRT2
    elif isinstance(gate, PauliX):
        i0, i1 = index({gate.target: 0}), index({gate.target: 1})
        v0 = view[i0].copy()
        view[i0] = view[i1]
        view[i1] = v0
    elif isinstance(gate, Swap):
        i01, i10 = index({gate.a: 0, gate.b: 1}), index({gate.a: 1, gate.b: 0})
        v = view[i01].copy()
        view[i01] = view[i10]
        view[i10] = v
    else:
        raise StructuralError(f"unsupported gate {gate!r}")


def apply_gate(state: StateVector, gate: Gate, *, inplace: bool = False) -> StateVector:
    """Apply one gate; returns a new state unless ``inplace`` is set."""
    gate.validate(state.num_qubits)
    out = state if inplace else state.copy()
    _apply_inplace(out.amplitudes, out.num_qubits, gate)
    return out


def run_circuit(state: StateVector, circuit: "Circuit", *, inplace: bool = False) -> StateVector:
    """Apply every gate of ``circuit`` in order.

    The circuit is frozen as a side effect; gates were validated on append.
    """
    if circuit.num_qubits != state.num_qubits:
        raise StructuralError(
            f"circuit has {circuit.num_qubits} qubits, state has {state.num_qubits}"
        )
    circuit.freeze()
    out = state if inplace else state.copy()
    amps, nq = out.amplitudes, out.num_qubits
    for gate in circuit.gates:
        _apply_inplace(amps, nq, gate)
    return out


def register_distribution(state: StateVector, register: "Register") -> np.ndarray:
    """Marginal probabilities of each value the register can hold."""
    if register.offset < 0 or register.offset + register.width > state.num_qubits:
        raise RangeError(f"register {register.name!r} does not fit in {state.num_qubits} qubits")
    probs = state.probabilities().reshape(
        1 << (state.num_qubits - register.offset - register.width),
        1 << register.width,
        1 << register.offset,
    )
    raw = probs.sum(axis=(0, 2))
    if register.bit_order == "lsb_first":
        return raw
    values = np.array([register.decode_raw(r) for r in range(raw.size)])
    dist = np.empty_like(raw)
    dist[values] = raw
    return dist


def readout(state: StateVector, register: "Register") -> tuple[int, float]:
    """Most probable value of ``register`` and its marginal probability."""
    dist = register_distribution(state, register)
    value = int(np.argmax(dist))
    return value, float(dist[value])
