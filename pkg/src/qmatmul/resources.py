"""Closed-form resource formulas and the reference circuits they describe."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .arithmetic import (
    UIntOperand,
    build_adder_optimized,
    build_adder_original,
    build_multiplier_optimized,
    build_multiplier_original,
)
from .circuit import Circuit, new_circuit
from .errors import RangeError
from .statevector import DEFAULT_MAX_QUBITS


@dataclass(frozen=True)
class ResourceFormula:
    construction: str
    qubits: Optional[Callable[[int], int]]
    gates: Callable[[int], int]

    @property
    def quantum(self) -> bool:
        return self.qubits is not None


FORMULAS: dict[str, ResourceFormula] = {
    f.construction: f
    for f in (
        ResourceFormula("adder_original", lambda n: 2 * n + 1, lambda n: (n * n + 3 * n) // 2),
        ResourceFormula("adder_optimized", lambda n: n + 1, lambda n: n + 1),
        ResourceFormula("adder_classical", None, lambda n: 5 * n - 3),
        ResourceFormula("multiplier_original", lambda n: 4 * n, lambda n: 2 * n**3),
        ResourceFormula("multiplier_optimized", lambda n: 3 * n, lambda n: (3 * n * n + n) // 2),
        ResourceFormula("multiplier_classical", None, lambda n: 6 * n * n),
    )
}

CONSTRUCTIONS = tuple(FORMULAS)
QUANTUM_CONSTRUCTIONS = tuple(name for name, f in FORMULAS.items() if f.quantum)


def _formula(construction: str) -> ResourceFormula:
    try:
        return FORMULAS[construction]
    except KeyError:
        raise RangeError(
            f"unknown construction {construction!r}; expected one of {', '.join(CONSTRUCTIONS)}"
        ) from None


def resource_estimate(construction: str, n: int) -> tuple[Optional[int], int]:
    """``(qubits, gates)`` for one operation on ``n``-bit operands.

    Classical constructions have no qubit count and return ``None`` for it.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    f = _formula(construction)
    return (f.qubits(n) if f.qubits else None), f.gates(n)


def build_construction(construction: str, n: int, constant: Optional[int] = None, *,
                       max_qubits: int = DEFAULT_MAX_QUBITS) -> Circuit:
    """Build the named quantum construction on freshly laid-out registers.

    ``constant`` is the classical operand of the optimized forms (default
    ``2**n - 1``); gate counts do not depend on it. Raise ``max_qubits`` to
    build circuits that are only counted, never simulated.
    """
    f = _formula(construction)
    if not f.quantum:
        raise RangeError(f"{construction} has no quantum circuit")
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    c = (1 << n) - 1 if constant is None else constant
    if construction == "adder_original":
        lay = new_circuit([("a", n), ("acc", n + 1, "lsb_first", "accumulator")],
                          max_qubits=max_qubits)
        return build_adder_original(lay.register("a"), lay.register("acc"))
    if construction == "adder_optimized":
        lay = new_circuit([("acc", n + 1, "lsb_first", "accumulator")], max_qubits=max_qubits)
        return build_adder_optimized(UIntOperand(c, n), lay.register("acc"))
    if construction == "multiplier_original":
        lay = new_circuit([("a", n), ("b", n), ("out", 2 * n, "lsb_first", "accumulator")],
                          max_qubits=max_qubits)
        return build_multiplier_original(lay.register("a"), lay.register("b"), lay.register("out"))
    lay = new_circuit([("b", n), ("out", 2 * n, "lsb_first", "accumulator")], max_qubits=max_qubits)
    return build_multiplier_optimized(UIntOperand(c, n), lay.register("b"), lay.register("out"))


@dataclass(frozen=True)
class ResourceReport:
    construction: str
    n: int
    qubits: Optional[int]
    gates: int
    built_qubits: Optional[int] = None
    built_gates: Optional[int] = None


def resource_table(n_values, constructions=CONSTRUCTIONS) -> list[ResourceReport]:
    """Formula values alongside the census of the actually built circuits."""
    rows = []
    for construction in constructions:
        for n in n_values:
            qubits, gates = resource_estimate(construction, n)
            built_q = built_g = None
            if FORMULAS[construction].quantum:
                # counted only, so the simulation cap does not apply
                circuit = build_construction(construction, n, max_qubits=qubits)
                built_q, built_g = circuit.num_qubits, circuit.census().counted
            rows.append(ResourceReport(construction, n, qubits, gates, built_q, built_g))
    return rows
