"""QFT-based adders and multipliers.

Every construction is QFT(target) -> rotation core -> IQFT(target).  Only the
rotation core is flagged as counted; QFT blocks and operand loading are
treated as data encoding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .circuit import Circuit, Register, span
from .errors import RangeError, StructuralError
from .gates import CCPhase, ControlledPhase, PauliX, Phase, fraction_angle
from .qft import build_iqft, build_qft, fourier_qubit


@dataclass(frozen=True)
class UIntOperand:
    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise RangeError(f"operand width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise RangeError(f"{self.value} is not an unsigned {self.width}-bit value")

    @property
    def encoded(self) -> int:
        return self.value


@dataclass(frozen=True)
class SignedOperand:
    """Two's-complement operand; ``width`` includes the sign bit."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise RangeError(f"operand width must be >= 1, got {self.width}")
        half = 1 << (self.width - 1)
        if not -half <= self.value < half:
            raise RangeError(f"{self.value} is not a signed {self.width}-bit value")

    @property
    def encoded(self) -> int:
        return self.value % (1 << self.width)


Addend = Union[UIntOperand, SignedOperand, int]


def decode_signed(measured: int, width: int) -> int:
    if not 0 <= measured < (1 << width):
        raise RangeError(f"{measured} is not a {width}-bit measurement")
    if measured >> (width - 1):
        return measured - (1 << width)
    return measured


def load_value(register: Register, value: int, num_qubits: int | None = None) -> Circuit:
    """X gates writing ``value`` (taken mod 2**width) into a |0> register; uncounted."""
    circuit = span(register, num_qubits=num_qubits)
    encoded = value % (1 << register.width)
    for bit in range(register.width):
        if encoded >> bit & 1:
            circuit.append(PauliX(register.qubit(bit)), counted=False)
    return circuit


def _wrap(core: Circuit, target: Register) -> Circuit:
    circuit = span(*core.registers, num_qubits=core.num_qubits)
    circuit.compose(build_qft(target, core.num_qubits))
    circuit.compose(core)
    circuit.compose(build_iqft(target, core.num_qubits))
    return circuit


def phase_add_stage(value: int, acc_reg: Register, num_qubits: int | None = None) -> Circuit:
    """One uncontrolled phase per accumulator qubit adding ``value`` in Fourier space."""
    core = span(acc_reg, num_qubits=num_qubits)
    for l in range(1, acc_reg.width + 1):
        core.append(Phase(fourier_qubit(acc_reg, l), fraction_angle(value, l)))
    return core


def multiply_accumulate_stage(
    a: int, b_reg: Register, acc_reg: Register, num_qubits: int | None = None
) -> Circuit:
    """Add ``a * b`` to a Fourier-encoded accumulator, ``a`` classical.

    b-bit ``j`` (weight ``2**j``) drives a controlled phase on every Fourier
    qubit ``l > j``; rotations with ``l <= j`` are multiples of 2*pi for
    any ``a`` and are left out.
    """
    core = span(b_reg, acc_reg, num_qubits=num_qubits)
    for j in range(b_reg.width):
        control = b_reg.qubit(j)
        for l in range(j + 1, acc_reg.width + 1):
            angle = fraction_angle(a << j, l)
            core.append(ControlledPhase(control, fourier_qubit(acc_reg, l), angle))
    return core


def build_adder_original(a_reg: Register, acc_reg: Register) -> Circuit:
    """Quantum-quantum adder: acc <- acc + a.

    The accumulator carries one extra (carry) qubit.  a-bit ``i`` controls
    a rotation on each Fourier qubit ``l > i``, giving ``(n*n + 3*n) / 2``
    counted gates.
    """
    if acc_reg.width != a_reg.width + 1:
        raise StructuralError(
            f"accumulator must be one qubit wider than the addend "
            f"({acc_reg.width} vs {a_reg.width})"
        )
    core = span(a_reg, acc_reg)
    for l in range(1, acc_reg.width + 1):
        target = fourier_qubit(acc_reg, l)
        for i in range(min(l, a_reg.width)):
            core.append(ControlledPhase(a_reg.qubit(i), target, fraction_angle(1 << i, l)))
    return _wrap(core, acc_reg)


def build_adder_optimized(constant: UIntOperand, acc_reg: Register) -> Circuit:
    """Classical-addend adder: acc <- (acc + constant) mod 2**(n+1)."""
    if acc_reg.width != constant.width + 1:
        raise StructuralError(
            f"accumulator must be one qubit wider than the constant "
            f"({acc_reg.width} vs {constant.width})"
        )
    return _wrap(phase_add_stage(constant.value, acc_reg), acc_reg)


def _addend_value(addend: Addend) -> int:
    if isinstance(addend, (UIntOperand, SignedOperand)):
        return addend.value
    return int(addend)


def build_accumulator(constants: Iterable[Addend], acc_reg: Register) -> Circuit:
    """Add several classical constants between a single QFT/IQFT pair.

    An empty list gives an empty (identity) circuit.
    """
    values = [_addend_value(c) for c in constants]
    if not values:
        return span(acc_reg)
    core = span(acc_reg)
    for v in values:
        core.compose(phase_add_stage(v, acc_reg))
    return _wrap(core, acc_reg)


def signed_add_constant(constant: SignedOperand, acc_reg: Register) -> Circuit:
    """Two's-complement add; the top accumulator qubit acts as the sign bit."""
    if acc_reg.width != constant.width:
        raise StructuralError(
            f"signed accumulator width {acc_reg.width} != operand width {constant.width}"
        )
    return _wrap(phase_add_stage(constant.encoded, acc_reg), acc_reg)


def build_multiplier_original(a_reg: Register, b_reg: Register, out_reg: Register) -> Circuit:
    """Quantum-quantum multiplier: out <- a * b via doubly-controlled phases.

    One gate per (a-bit, b-bit, output qubit) triple, ``2*n**3`` in all;
    triples whose angle reduces to zero are still emitted.
    """
    n = a_reg.width
    if b_reg.width != n or out_reg.width != 2 * n:
        raise StructuralError(
            f"expected widths n, n, 2n; got {a_reg.width}, {b_reg.width}, {out_reg.width}"
        )
    core = span(a_reg, b_reg, out_reg)
    for i in range(n):
        for j in range(n):
            for l in range(1, 2 * n + 1):
                core.append(
                    CCPhase(a_reg.qubit(i), b_reg.qubit(j), fourier_qubit(out_reg, l),
                            fraction_angle(1 << (i + j), l))
                )
    return _wrap(core, out_reg)


def multiplier_phase_stage(a: UIntOperand, b_reg: Register, out_reg: Register) -> Circuit:
    """The rotation core of the optimized multiplier, without QFT/IQFT."""
    if b_reg.width != a.width or out_reg.width != 2 * a.width:
        raise StructuralError(
            f"expected b width {a.width} and output width {2 * a.width}; "
            f"got {b_reg.width}, {out_reg.width}"
        )
    return multiply_accumulate_stage(a.value, b_reg, out_reg)


def build_multiplier_optimized(a: UIntOperand, b_reg: Register, out_reg: Register) -> Circuit:
    """Classical-times-quantum multiplier: out <- a * b.

    Partial products are summed directly with single-controlled rotations,
    ``(3*n**2 + n) / 2`` counted gates.
    """
    return _wrap(multiplier_phase_stage(a, b_reg, out_reg), out_reg)
