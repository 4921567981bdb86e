"""The gate set used by every construction in this package.

Angles are in radians.  Qubit 0 is the least-significant bit of a basis
index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import ClassVar, Union

from .errors import RangeError

TWO_PI = 2.0 * math.pi


def reduce_angle(angle: float) -> float:
    """Reduce ``angle`` into ``[0, 2*pi)``."""
    reduced = math.fmod(angle, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    # fmod can land exactly on 2*pi after the correction above
    return 0.0 if reduced >= TWO_PI else reduced


def fraction_angle(numerator: int, log_denominator: int) -> float:
    """Return ``2*pi * numerator / 2**log_denominator`` reduced mod 2*pi.

    The reduction happens on integers first, so large numerators lose no
    precision.
    """
    denom = 1 << log_denominator
    return TWO_PI * ((numerator % denom) / denom)


@dataclass(frozen=True)
class _Gate:
    kind: ClassVar[str] = ""
    symbol: ClassVar[str] = ""
    diagonal: ClassVar[bool] = False

    @property
    def qubits(self) -> tuple[int, ...]:
        raise NotImplementedError

    def inverse(self) -> "Gate":
        return self  # type: ignore[return-value]

    def validate(self, num_qubits: int) -> None:
        qs = self.qubits
        for q in qs:
            if not isinstance(q, int) or q < 0 or q >= num_qubits:
                raise RangeError(f"{self.kind}: qubit {q!r} outside 0..{num_qubits - 1}")
        if len(set(qs)) != len(qs):
            raise RangeError(f"{self.kind}: repeated qubit in {qs}")
        angle = getattr(self, "angle", 0.0)
        if not math.isfinite(angle):
            raise RangeError(f"{self.kind}: angle must be finite, got {angle!r}")


@dataclass(frozen=True)
class Hadamard(_Gate):
    target: int
    kind: ClassVar[str] = "Hadamard"
    symbol: ClassVar[str] = "H"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class PauliX(_Gate):
    target: int
    kind: ClassVar[str] = "PauliX"
    symbol: ClassVar[str] = "X"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class Phase(_Gate):
    target: int
    angle: float
    kind: ClassVar[str] = "Phase"
    symbol: ClassVar[str] = "P"
    diagonal: ClassVar[bool] = True

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)

    def inverse(self) -> "Phase":
        return replace(self, angle=-self.angle)


@dataclass(frozen=True)
class ControlledPhase(_Gate):
    control: int
    target: int
    angle: float
    kind: ClassVar[str] = "ControlledPhase"
    symbol: ClassVar[str] = "CP"
    diagonal: ClassVar[bool] = True

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)

    def inverse(self) -> "ControlledPhase":
        return replace(self, angle=-self.angle)


@dataclass(frozen=True)
class CCPhase(_Gate):
    control1: int
    control2: int
    target: int
    angle: float
    kind: ClassVar[str] = "CCPhase"
    symbol: ClassVar[str] = "CCP"
    diagonal: ClassVar[bool] = True

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control1, self.control2, self.target)

    def inverse(self) -> "CCPhase":
        return replace(self, angle=-self.angle)


@dataclass(frozen=True)
class Swap(_Gate):
    a: int
    b: int
    kind: ClassVar[str] = "Swap"
    symbol: ClassVar[str] = "SWAP"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.a, self.b)


Gate = Union[Hadamard, PauliX, Phase, ControlledPhase, CCPhase, Swap]

GATE_TYPES: dict[str, type] = {
    cls.symbol: cls for cls in (Hadamard, PauliX, Phase, ControlledPhase, CCPhase, Swap)
}
