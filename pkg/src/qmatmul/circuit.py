"""Circuit IR: registers, an append-only gate list, census and gate-list I/O."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, fields, replace
from typing import Iterable, Iterator, Sequence

from .errors import RangeError, StructuralError
from .gates import GATE_TYPES, Gate
from .statevector import DEFAULT_MAX_QUBITS, check_qubit_cap

BIT_ORDERS = ("msb_first", "lsb_first")
ROLES = ("operand", "accumulator", "sign", "carry")


@dataclass(frozen=True)
class Register:
    """A contiguous span of qubits holding one integer.

    With ``lsb_first`` the qubit at ``offset + i`` carries weight ``2**i``;
    with ``msb_first`` it carries ``2**(width - 1 - i)``.
    """

    name: str
    offset: int
    width: int
    bit_order: str = "lsb_first"
    role: str = "operand"

    def __post_init__(self):
        if self.width < 1:
            raise StructuralError(f"register {self.name!r}: width must be >= 1")
        if self.offset < 0:
            raise RangeError(f"register {self.name!r}: negative offset")
        if self.bit_order not in BIT_ORDERS:
            raise StructuralError(f"register {self.name!r}: bad bit order {self.bit_order!r}")
        if self.role not in ROLES:
            raise StructuralError(f"register {self.name!r}: bad role {self.role!r}")
        if not self.name or any(c in self.name for c in ", \n="):
            raise StructuralError(f"register name {self.name!r} is not an identifier")

    @property
    def end(self) -> int:
        return self.offset + self.width

    def qubit(self, bit: int) -> int:
        """Physical qubit carrying weight ``2**bit``."""
        if not 0 <= bit < self.width:
            raise RangeError(f"register {self.name!r} has no bit {bit}")
        if self.bit_order == "lsb_first":
            return self.offset + bit
        return self.offset + self.width - 1 - bit

    @property
    def qubits(self) -> tuple[int, ...]:
        """Physical qubits ordered from least to most significant."""
        return tuple(self.qubit(b) for b in range(self.width))

    def decode_raw(self, raw: int) -> int:
        """Value held when the register's qubits read ``raw`` (qubit offset+i = bit i)."""
        if self.bit_order == "lsb_first":
            return raw
        return int(format(raw, f"0{self.width}b")[::-1], 2)

    def encode(self, value: int) -> int:
        """Basis-index contribution of this register holding ``value``."""
        if not 0 <= value < (1 << self.width):
            raise RangeError(f"value {value} does not fit register {self.name!r}")
        return self.decode_raw(value) << self.offset

    def reversed(self) -> "Register":
        flipped = "lsb_first" if self.bit_order == "msb_first" else "msb_first"
        return replace(self, bit_order=flipped)

    def overlaps(self, other: "Register") -> bool:
        return self.offset < other.end and other.offset < self.end


@dataclass(frozen=True)
class GateCensus:
    total: int
    counted: int
    by_kind: dict[str, int]


class Circuit:
    """Ordered gates over ``num_qubits`` qubits, each flagged counted or not.

    Circuits are append-only and can be frozen; simulation freezes them.
    ``output_registers`` describes the register layout after the circuit
    runs (a QFT reverses bit order, for instance).
    """

    def __init__(
        self,
        num_qubits: int,
        registers: Iterable[Register] = (),
        *,
        output_registers: Iterable[Register] | None = None,
        max_qubits: int = DEFAULT_MAX_QUBITS,
    ):
        if num_qubits < 1:
            raise StructuralError("a circuit needs at least one qubit")
        check_qubit_cap(num_qubits, max_qubits)
        self.num_qubits = num_qubits
        self._registers: list[Register] = []
        self._gates: list[Gate] = []
        self._counted: list[bool] = []
        self._frozen = False
        for reg in registers:
            self.add_register(reg)
        self._outputs: dict[str, Register] = {}
        for reg in output_registers or ():
            self._outputs[reg.name] = reg

    # registers -----------------------------------------------------------
    def add_register(self, register: Register) -> Register:
        if register.end > self.num_qubits:
            raise RangeError(
                f"register {register.name!r} spans to qubit {register.end - 1}, "
                f"circuit has {self.num_qubits}"
            )
        for other in self._registers:
            if other.name == register.name:
                if other == register or other == register.reversed():
                    return other
                raise StructuralError(f"duplicate register name {register.name!r}")
            if other.overlaps(register):
                raise StructuralError(f"registers {other.name!r} and {register.name!r} overlap")
        self._registers.append(register)
        return register

    @property
    def registers(self) -> tuple[Register, ...]:
        return tuple(self._registers)

    @property
    def output_registers(self) -> tuple[Register, ...]:
        return tuple(self._outputs.get(r.name, r) for r in self._registers)

    def register(self, name: str) -> Register:
        for reg in self._registers:
            if reg.name == name:
                return reg
        raise KeyError(name)

    def output_register(self, name: str) -> Register:
        return self._outputs.get(name) or self.register(name)

    # gates ---------------------------------------------------------------
    @property
    def gates(self) -> tuple[Gate, ...]:
        return tuple(self._gates)

    @property
    def counted_flags(self) -> tuple[bool, ...]:
        return tuple(self._counted)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Circuit":
        self._frozen = True
        return self

    def append(self, gate: Gate, counted: bool = True) -> "Circuit":
        if self._frozen:
            raise StructuralError("cannot append to a frozen circuit")
        gate.validate(self.num_qubits)
        self._gates.append(gate)
        self._counted.append(bool(counted))
        return self

    def compose(self, other: "Circuit") -> "Circuit":
        """Append all of ``other``'s gates (and its registers) to this circuit."""
        if other.num_qubits > self.num_qubits:
            raise StructuralError(
                f"cannot compose a {other.num_qubits}-qubit circuit into {self.num_qubits} qubits"
            )
        for reg in other.registers:
            self.add_register(reg)
        for gate, counted in zip(other._gates, other._counted):
            self.append(gate, counted)
        # a sub-circuit that flips a register's bit order flips the running layout
        for name, out in other._outputs.items():
            if out.bit_order == other.register(name).bit_order:
                continue
            flipped = self.output_register(name).reversed()
            if flipped == self.register(name):
                self._outputs.pop(name, None)
            else:
                self._outputs[name] = flipped
        return self

    def inverse(self) -> "Circuit":
        """Reversed gate order with negated angles; counted flags travel with gates."""
        inv = Circuit(
            self.num_qubits,
            self.output_registers,
            output_registers=self.registers,
            max_qubits=self.num_qubits,
        )
        for gate, counted in zip(reversed(self._gates), reversed(self._counted)):
            inv.append(gate.inverse(), counted)
        return inv

    def census(self) -> GateCensus:
        kinds = Counter(g.kind for g in self._gates)
        return GateCensus(total=len(self._gates), counted=sum(self._counted), by_kind=dict(kinds))

    def __len__(self) -> int:
        return len(self._gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self._gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.num_qubits == other.num_qubits
            and self._gates == other._gates
            and self._counted == other._counted
            and self.registers == other.registers
        )

    def __repr__(self) -> str:
        c = self.census()
        return f"Circuit(num_qubits={self.num_qubits}, gates={c.total}, counted={c.counted})"


def new_circuit(
    registers: Sequence[tuple], *, max_qubits: int = DEFAULT_MAX_QUBITS
) -> Circuit:
    """Lay registers out back to back, first one at qubit 0.

    Each entry is ``(name, width[, bit_order[, role]])``.
    """
    regs = []
    offset = 0
    for entry in registers:
        name, width, *rest = entry
        bit_order = rest[0] if len(rest) > 0 else "lsb_first"
        role = rest[1] if len(rest) > 1 else "operand"
        regs.append(Register(name, offset, width, bit_order, role))
        offset += width
    if not regs:
        raise StructuralError("a circuit needs at least one register")
    return Circuit(offset, regs, max_qubits=max_qubits)


def append(circuit: Circuit, gate: Gate, counted: bool = True) -> Circuit:
    return circuit.append(gate, counted)


def inverse(circuit: Circuit) -> Circuit:
    return circuit.inverse()


def census(circuit: Circuit) -> GateCensus:
    return circuit.census()


def span(*registers: Register, num_qubits: int | None = None, output_registers=None) -> Circuit:
    """Empty circuit just wide enough for ``registers``.

    The registers come from a layout that already passed the qubit cap, so the
    cap is not re-checked here.
    """
    width = num_qubits or max(r.end for r in registers)
    return Circuit(width, registers, output_registers=output_registers, max_qubits=width)


# gate-list text format -------------------------------------------------------

def export_gatelist(circuit: Circuit) -> str:
    """Serialize to the line-oriented gate-list format.

    ::

        qubits=3
        reg=a,0,3,lsb_first,operand
        counted=0001
        H 2
        CP 1,2,1.5707963267948966
    """
    lines = [f"qubits={circuit.num_qubits}"]
    for r in circuit.registers:
        lines.append(f"reg={r.name},{r.offset},{r.width},{r.bit_order},{r.role}")
    lines.append("counted=" + "".join("1" if c else "0" for c in circuit.counted_flags))
    for gate in circuit.gates:
        fields = [str(q) for q in gate.qubits]
        if hasattr(gate, "angle"):
            fields.append(format(gate.angle, ".17g"))
        lines.append(f"{gate.symbol} {','.join(fields)}")
    return "\n".join(lines) + "\n"


def import_gatelist(text: str) -> Circuit:
    """Parse :func:`export_gatelist` output.  A missing ``counted=`` line
    marks every gate as counted."""
    num_qubits = None
    regs: list[Register] = []
    counted: str | None = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("qubits="):
                num_qubits = int(line[len("qubits="):])
            elif line.startswith("reg="):
                name, offset, width, order, role = line[len("reg="):].split(",")
                regs.append(Register(name, int(offset), int(width), order, role))
            elif line.startswith("counted="):
                counted = line[len("counted="):]
            else:
                symbol, _, args = line.partition(" ")
                cls = GATE_TYPES[symbol]
                parts = args.split(",")
                names = [f.name for f in fields(cls)]
                nq = len(names) - ("angle" in names)
                values: list = [int(p) for p in parts[:nq]]
                if "angle" in names:
                    values.append(float(parts[nq]))
                if len(parts) != len(values):
                    raise ValueError("wrong field count")
                gates.append(cls(*values))
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise StructuralError(f"gate list line {lineno}: cannot parse {raw!r}") from exc
    if num_qubits is None:
        raise StructuralError("gate list is missing the qubits= header")
    flags = [True] * len(gates) if counted is None else [c == "1" for c in counted]
    if len(flags) != len(gates):
        raise StructuralError("counted= flag count does not match the gate count")
    circuit = Circuit(num_qubits, regs, max_qubits=num_qubits)
    for gate, flag in zip(gates, flags):
        circuit.append(gate, flag)
    return circuit
