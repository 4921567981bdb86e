"""QFT-based quantum arithmetic and quantum matrix multiplication."""

from .arithmetic import (SignedOperand, UIntOperand, build_accumulator, build_adder_optimized,
                         build_adder_original, build_multiplier_optimized,
                         build_multiplier_original, decode_signed, load_value,
                         multiplier_phase_stage, signed_add_constant)
from .circuit import (Circuit, GateCensus, Register, census, export_gatelist, import_gatelist,
                      inverse, new_circuit)
from .errors import (ConstraintError, InvariantError, QMatMulError, QubitCapError, RangeError,
                     StructuralError, WidthPlanError)
from .gates import CCPhase, ControlledPhase, Hadamard, PauliX, Phase, Swap
from .matmul import (IntMatrix, MatmulStats, WidthPlan, compare_algorithms, matmul_classical,
                     qmatmul_basic, qmatmul_strassen, strassen_classical)
from .qft import build_iqft, build_qft
from .report import format_measurement, parse_measurement
from .resources import resource_estimate
from .statevector import StateVector, apply_gate, init_basis_state, readout, run_circuit

__version__ = "0.1.0"
