"""Exception hierarchy shared by all modules."""


class QMatMulError(Exception):
    """Base class for every error raised by this package."""


class RangeError(QMatMulError, IndexError):
    """A qubit index, basis index or operand value is out of range."""


class StructuralError(QMatMulError, ValueError):
    """Inputs have incompatible shapes, widths or layouts."""


class ConstraintError(QMatMulError, ValueError):
    """A resource constraint (width plan, qubit cap) would be violated."""


class QubitCapError(ConstraintError, StructuralError):
    """A circuit or state would exceed the configured qubit cap."""


class WidthPlanError(ConstraintError):
    """A register width plan cannot hold the worst-case value."""


class InvariantError(QMatMulError, RuntimeError):
    """An internal invariant failed (e.g. a non-deterministic readout)."""
