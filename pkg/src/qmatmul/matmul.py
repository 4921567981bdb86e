"""Quantum matrix multiplication built from the QFT arithmetic circuits.

Each output element (and each Strassen intermediate) is computed in its own
simulation: a small circuit over an operand register and an accumulator,
read out deterministically and checked against integer arithmetic.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .arithmetic import build_accumulator, decode_signed, load_value, multiply_accumulate_stage
from .circuit import Register, span
from .errors import InvariantError, RangeError, StructuralError, WidthPlanError
from .qft import build_iqft, build_qft
from .statevector import DEFAULT_MAX_QUBITS, check_qubit_cap, init_basis_state, readout, run_circuit

READOUT_TOLERANCE = 1e-9


def _bits(value: int) -> int:
    """Bits needed for a nonnegative value (at least one)."""
    return max(int(value).bit_length(), 1)


def _ceil_log2(k: int) -> int:
    return (max(k, 1) - 1).bit_length()


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Row-major integer matrix whose elements fit ``element_width`` bits.

    Unsigned matrices hold ``0 <= e < 2**n``; signed ones hold two's-complement
    values ``-2**(n-1) <= e < 2**(n-1)``.
    """

    data: np.ndarray
    element_width: int
    signed: bool = False

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim != 2 or 0 in arr.shape:
            raise StructuralError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)
        n = self.element_width
        if n < 1:
            raise RangeError(f"element width must be >= 1, got {n}")
        lo, hi = (-(1 << (n - 1)), 1 << (n - 1)) if self.signed else (0, 1 << n)
        if arr.min() < lo or arr.max() >= hi:
            kind = "signed" if self.signed else "unsigned"
            raise RangeError(f"elements must be {kind} {n}-bit values in [{lo}, {hi})")

    @classmethod
    def from_rows(cls, rows, element_width: Optional[int] = None, signed: Optional[bool] = None):
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if signed is None:
            signed = bool(arr.size and arr.min() < 0)
        if element_width is None:
            if signed:
                element_width = max(_bits(int(arr.max()) if arr.max() >= 0 else 0),
                                    _bits(-int(arr.min()) - 1)) + 1
            else:
                element_width = _bits(int(arr.max()))
        return cls(arr, element_width, signed)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.data.reshape(-1))

    @property
    def magnitude_bound(self) -> int:
        """Largest |element| the declared width allows."""
        n = self.element_width
        return 1 << (n - 1) if self.signed else (1 << n) - 1

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            other = other.data
        other = np.asarray(other)
        return self.data.shape == other.shape and bool(np.array_equal(self.data, other))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()}, element_width={self.element_width}, signed={self.signed})"


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def _result(arr: np.ndarray) -> IntMatrix:
    return IntMatrix.from_rows(arr)


@dataclass(frozen=True)
class WidthPlan:
    """Register widths fixed before any circuit is built."""

    operand_width: int
    accumulator_width: int
    sign_headroom: int = 0

    def __post_init__(self):
        if self.operand_width < 1 or self.accumulator_width < 1:
            raise WidthPlanError("widths must be >= 1")
        if self.sign_headroom not in (0, 1):
            raise WidthPlanError("sign_headroom must be 0 or 1")

    @staticmethod
    def required_width(operand_width: int, k: int, sign_headroom: int = 0) -> int:
        """Accumulator bits for ``k`` worst-case products of ``n``-bit operands."""
        return 2 * operand_width + _ceil_log2(k) + sign_headroom

    @classmethod
    def minimal(cls, operand_width: int, k: int, sign_headroom: int = 0) -> "WidthPlan":
        return cls(operand_width, cls.required_width(operand_width, k, sign_headroom), sign_headroom)

    def accepts(self, k: int) -> bool:
        return self.accumulator_width >= self.required_width(self.operand_width, k, self.sign_headroom)

    def validate(self, k: int) -> None:
        if not self.accepts(k):
            need = self.required_width(self.operand_width, k, self.sign_headroom)
            raise WidthPlanError(
                f"accumulator width {self.accumulator_width} cannot hold an inner product of "
                f"length {k} over {self.operand_width}-bit elements (needs {need} bits)"
            )


@dataclass(frozen=True)
class ElementReadout:
    row: int
    col: int
    value: int
    raw: int
    width: int
    probability: float


@dataclass
class MatmulStats:
    quantum_multiplications: int = 0
    quantum_additions: int = 0
    total_counted_gates: int = 0
    total_qubits_peak: int = 0
    wall_time: float = 0.0
    circuits: int = 0
    readouts: list[ElementReadout] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "quantum_multiplications": self.quantum_multiplications,
            "quantum_additions": self.quantum_additions,
            "total_counted_gates": self.total_counted_gates,
            "total_qubits_peak": self.total_qubits_peak,
            "wall_time": self.wall_time,
            "circuits": self.circuits,
        }


def inner_product_circuit(a_terms, b_terms, b_width: int, acc_width: int):
    """Fused multiply-accumulate circuit for ``sum(a_t * b_t)``.

    Layout: b-register on qubits ``0..b_width-1``, accumulator above it.
    QFT(acc), then per term: load ``b_t`` into the b-register, add
    ``a_t * b_t`` with single-controlled phases, unload; finally IQFT(acc).
    A negative ``b_t`` is loaded as ``|b_t|`` with its sign folded into the
    classical ``a_t``.  Returns ``(circuit, acc_register)``.
    """
    if len(a_terms) != len(b_terms):
        raise StructuralError("inner product needs equally long operand vectors")
    b_reg = Register("b", 0, b_width, "lsb_first", "operand")
    acc = Register("acc", b_width, acc_width, "lsb_first", "accumulator")
    circuit = span(b_reg, acc)
    circuit.compose(build_qft(acc, circuit.num_qubits))
    for a, b in zip(a_terms, b_terms):
        a, b = int(a), int(b)
        if b < 0:
            a, b = -a, -b
        if b >= 1 << b_width:
            raise RangeError(f"operand {b} overflows its {b_width}-bit register")
        prep = load_value(b_reg, b, circuit.num_qubits)
        circuit.compose(prep)
        circuit.compose(multiply_accumulate_stage(a, b_reg, acc, circuit.num_qubits))
        circuit.compose(prep)
    circuit.compose(build_iqft(acc, circuit.num_qubits))
    return circuit, acc


class _Simulator:
    """Builds, runs and checks the per-element circuits; tallies stats."""

    def __init__(self, max_qubits: int, cache: Optional[dict] = None):
        self.max_qubits = max_qubits
        self.cache = cache
        self.stats = MatmulStats()
        self.intermediates: list[tuple[int, int]] = []

    def _run(self, key, build, width: int, signed: bool, expected: int):
        """Simulate the circuit produced by ``build()`` and check it against ``expected``.

        With a cache, each distinct ``key`` is simulated once.
        """
        hit = self.cache.get(key) if self.cache is not None else None
        if hit is None:
            circuit, register = build()
            check_qubit_cap(circuit.num_qubits, self.max_qubits)
            state = run_circuit(init_basis_state(circuit.num_qubits, max_qubits=self.max_qubits),
                                circuit, inplace=True)
            raw, prob = readout(state, register)
            hit = (raw, prob, circuit.census().counted, circuit.num_qubits)
            if self.cache is not None:
                self.cache[key] = hit
        raw, prob, counted, num_qubits = hit
        if prob <= 1.0 - READOUT_TOLERANCE:
            raise InvariantError(f"readout probability {prob!r} is not deterministic")
        value = decode_signed(raw, width) if signed else raw
        if value != expected:
            raise InvariantError(
                f"quantum result {value} != integer oracle {expected} ({width}-bit register)"
            )
        self.stats.circuits += 1
        self.stats.total_counted_gates += counted
        self.stats.total_qubits_peak = max(self.stats.total_qubits_peak, num_qubits)
        self.intermediates.append((value, width))
        return value, raw, prob

    def inner_product(self, a_terms, b_terms, b_width: int, acc_width: int, signed: bool):
        a_terms = tuple(int(x) for x in a_terms)
        b_terms = tuple(int(x) for x in b_terms)
        expected = sum(x * y for x, y in zip(a_terms, b_terms))
        self.stats.quantum_multiplications += len(a_terms)
        self.stats.quantum_additions += max(len(a_terms) - 1, 0)
        return self._run(
            ("inner", a_terms, b_terms, b_width, acc_width),
            lambda: inner_product_circuit(a_terms, b_terms, b_width, acc_width),
            acc_width, signed, expected,
        )

    def signed_sum(self, terms, width: int) -> int:
        """First term loaded into the accumulator, the rest phase-added in one QFT pair."""
        terms = tuple(int(t) for t in terms)

        def build():
            acc = Register("acc", 0, width, "lsb_first", "accumulator")
            circuit = span(acc)
            circuit.compose(load_value(acc, terms[0]))
            circuit.compose(build_accumulator(terms[1:], acc))
            return circuit, acc

        self.stats.quantum_additions += len(terms) - 1
        return self._run(("sum", terms, width), build, width, True, sum(terms))


def matmul_classical(A, B) -> IntMatrix:
    A, B = _as_matrix(A), _as_matrix(B)
    if A.cols != B.rows:
        raise StructuralError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return _result(A.data @ B.data)


def _check_square_pow2(A: IntMatrix, B: IntMatrix, threshold: int) -> int:
    if threshold < 1:
        raise StructuralError(f"threshold must be >= 1, got {threshold}")
    d = A.rows
    if A.shape != (d, d) or B.shape != (d, d):
        raise StructuralError(f"Strassen needs equal square matrices, got {A.shape} and {B.shape}")
    if d & (d - 1):
        raise StructuralError(f"Strassen needs a power-of-two dimension, got {d}")
    return d


def _quadrants(M: np.ndarray):
    h = M.shape[0] // 2
    return M[:h, :h], M[:h, h:], M[h:, :h], M[h:, h:]


# Strassen's seven products as signed combinations of quadrants 11, 12, 21, 22
# (indices 0..3), and the four output quadrants as combinations of M1..M7.
STRASSEN_PRODUCTS = (
    (((1, 0), (1, 3)), ((1, 0), (1, 3))),
    (((1, 2), (1, 3)), ((1, 0),)),
    (((1, 0),), ((1, 1), (-1, 3))),
    (((1, 3),), ((1, 2), (-1, 0))),
    (((1, 0), (1, 1)), ((1, 3),)),
    (((1, 2), (-1, 0)), ((1, 0), (1, 1))),
    (((1, 1), (-1, 3)), ((1, 2), (1, 3))),
)
STRASSEN_OUTPUTS = (
    ((1, 0), (1, 3), (-1, 4), (1, 6)),
    ((1, 2), (1, 4)),
    ((1, 1), (1, 3)),
    ((1, 0), (-1, 1), (1, 2), (1, 5)),
)


def _combine(parts, terms):
    return sum(sign * parts[i] for sign, i in terms)


def _strassen_array(A: np.ndarray, B: np.ndarray, threshold: int) -> np.ndarray:
    if A.shape[0] <= threshold:
        return A @ B
    Aq, Bq = _quadrants(A), _quadrants(B)
    M = [_strassen_array(_combine(Aq, at), _combine(Bq, bt), threshold)
         for at, bt in STRASSEN_PRODUCTS]
    C11, C12, C21, C22 = (_combine(M, terms) for terms in STRASSEN_OUTPUTS)
    return np.block([[C11, C12], [C21, C22]])


def strassen_classical(A, B, threshold: int = 1) -> IntMatrix:
    A, B = _as_matrix(A), _as_matrix(B)
    _check_square_pow2(A, B, threshold)
    return _result(_strassen_array(A.data, B.data, threshold))


def _signed_width(bound: int) -> int:
    """Two's-complement width holding every value in [-bound, bound]."""
    return _bits(bound) + 1


def _check_elements(M: IntMatrix, n: int, allow_signed: bool, label: str) -> int:
    """Validate ``M`` against operand width ``n``; return the magnitude bound."""
    lo, hi = int(M.data.min()), int(M.data.max())
    if lo < 0 and not allow_signed:
        raise RangeError(f"{label} has negative elements; this path needs nonnegative input")
    if lo < 0 or M.signed:
        if lo < -(1 << (n - 1)) or hi >= 1 << (n - 1):
            raise RangeError(f"{label} elements do not fit signed {n}-bit operands")
        return 1 << (n - 1)
    if hi >= 1 << n:
        raise RangeError(f"{label} elements do not fit {n}-bit operands")
    return (1 << n) - 1


def qmatmul_basic(A, B, plan: WidthPlan, *, max_qubits: int = DEFAULT_MAX_QUBITS,
                  circuit_cache: Optional[dict] = None):
    """Inner-product matrix multiplication, one fused circuit per element.

    Each ``c_ij`` circuit is QFT(acc), then for every ``t`` the b-register is
    prepared with ``b_tj`` and an optimized multiply stage with classical
    constant ``a_it`` runs, then IQFT(acc).  Returns ``(C, stats)``.

    ``circuit_cache`` (a dict, reusable across calls) makes each distinct
    element circuit simulate only once; stats still count every use.
    """
    A, B = _as_matrix(A), _as_matrix(B)
    if A.cols != B.rows:
        raise StructuralError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    if plan.sign_headroom != 0:
        raise WidthPlanError("the basic path works on nonnegative values; use sign_headroom=0")
    n, k = plan.operand_width, A.cols
    _check_elements(A, n, False, "A")
    _check_elements(B, n, False, "B")
    plan.validate(k)
    check_qubit_cap(n + plan.accumulator_width, max_qubits)

    sim = _Simulator(max_qubits, circuit_cache)
    start = time.perf_counter()
    C = np.zeros((A.rows, B.cols), dtype=np.int64)
    for i in range(A.rows):
        for j in range(B.cols):
            value, raw, prob = sim.inner_product(
                A.data[i, :], B.data[:, j], n, plan.accumulator_width, signed=False
            )
            C[i, j] = value
            sim.stats.readouts.append(ElementReadout(i, j, value, raw, plan.accumulator_width, prob))
    sim.stats.wall_time = time.perf_counter() - start
    return _finish(C, A, B, sim.stats)


def _finish(C: np.ndarray, A: IntMatrix, B: IntMatrix, stats: MatmulStats):
    if not np.array_equal(C, A.data @ B.data):
        raise InvariantError("quantum product differs from the classical product")
    return _result(C), stats


class _QuantumStrassen:
    def __init__(self, sim: _Simulator, threshold: int):
        self.sim = sim
        self.threshold = threshold

    def combine(self, parts, terms, bound: int):
        """Signed elementwise sum of quadrants; returns the matrix and its bound."""
        if len(terms) == 1 and terms[0][0] == 1:
            return parts[terms[0][1]], bound
        new_bound = len(terms) * bound
        return self._sum(parts, terms, _signed_width(new_bound)), new_bound

    def _sum(self, parts, terms, width: int, origin=None):
        shape = parts[terms[0][1]].shape
        out = np.zeros(shape, dtype=np.int64)
        for r in range(shape[0]):
            for c in range(shape[1]):
                addends = [sign * int(parts[i][r, c]) for sign, i in terms]
                value, raw, prob = self.sim.signed_sum(addends, width)
                out[r, c] = value
                if origin is not None:
                    self.sim.stats.readouts.append(
                        ElementReadout(r + origin[0], c + origin[1], value, raw, width, prob)
                    )
        return out

    def multiply(self, A, B, a_bound: int, b_bound: int, out_width: Optional[int] = None):
        d = A.shape[0]
        top = out_width is not None
        if d <= self.threshold:
            width = out_width or _signed_width(d * a_bound * b_bound)
            C = np.zeros((d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    value, raw, prob = self.sim.inner_product(
                        A[i, :], B[:, j], _bits(b_bound), width, signed=True
                    )
                    C[i, j] = value
                    if top:
                        self.sim.stats.readouts.append(ElementReadout(i, j, value, raw, width, prob))
            return C
        Aq, Bq = _quadrants(A), _quadrants(B)
        M = []
        for a_terms, b_terms in STRASSEN_PRODUCTS:
            S, s_bound = self.combine(Aq, a_terms, a_bound)
            T, t_bound = self.combine(Bq, b_terms, b_bound)
            M.append(self.multiply(S, T, s_bound, t_bound))
        width = out_width or _signed_width(d * a_bound * b_bound)
        h = d // 2
        origins = [(0, 0), (0, h), (h, 0), (h, h)] if top else [None] * 4
        quads = [self._sum(M, terms, width, origin)
                 for terms, origin in zip(STRASSEN_OUTPUTS, origins)]
        if top:
            self.sim.stats.readouts.sort(key=lambda ro: (ro.row, ro.col))
        return np.block([[quads[0], quads[1]], [quads[2], quads[3]]])


def strassen_peak_qubits(dim: int, a_bound: int, b_bound: int, threshold: int, out_width: int) -> int:
    """Widest circuit the quantum Strassen recursion will build, from bounds alone."""

    def walk(d, a, b, width):
        if d <= threshold:
            return _bits(b) + (width or _signed_width(d * a * b))
        peak = width or _signed_width(d * a * b)
        for a_terms, b_terms in STRASSEN_PRODUCTS:
            sa, sb = len(a_terms) * a, len(b_terms) * b
            if len(a_terms) > 1 or a_terms[0][0] != 1:
                peak = max(peak, _signed_width(sa))
            if len(b_terms) > 1 or b_terms[0][0] != 1:
                peak = max(peak, _signed_width(sb))
            peak = max(peak, walk(d // 2, sa, sb, None))
        return peak

    return walk(dim, a_bound, b_bound, out_width)


def qmatmul_strassen(A, B, plan: WidthPlan, threshold: int = 1, *,
                     max_qubits: int = DEFAULT_MAX_QUBITS, circuit_cache: Optional[dict] = None):
    """Quantum Strassen multiplication.  Returns ``(C, stats)``.

    Quadrant sums and output combinations run through signed accumulator
    circuits; blocks at or below ``threshold`` use fused inner-product
    circuits.  Intermediate registers are sized from worst-case magnitude
    bounds, the final outputs use ``plan.accumulator_width``.
    """
    A, B = _as_matrix(A), _as_matrix(B)
    d = _check_square_pow2(A, B, threshold)
    if plan.sign_headroom != 1:
        raise WidthPlanError("Strassen intermediates can be negative; use sign_headroom=1")
    n = plan.operand_width
    a_bound = _check_elements(A, n, True, "A")
    b_bound = _check_elements(B, n, True, "B")
    plan.validate(d)
    need = _signed_width(d * a_bound * b_bound)
    if plan.accumulator_width < need:
        raise WidthPlanError(
            f"accumulator width {plan.accumulator_width} cannot hold signed outputs "
            f"(needs {need} bits)"
        )
    check_qubit_cap(strassen_peak_qubits(d, a_bound, b_bound, threshold, plan.accumulator_width),
                    max_qubits)

    sim = _Simulator(max_qubits, circuit_cache)
    start = time.perf_counter()
    C = _QuantumStrassen(sim, threshold).multiply(
        A.data, B.data, a_bound, b_bound, out_width=plan.accumulator_width
    )
    sim.stats.wall_time = time.perf_counter() - start
    return _finish(C, A, B, sim.stats)


@dataclass
class ComparisonReport:
    C: IntMatrix
    basic: MatmulStats
    strassen: MatmulStats
    basic_plan: WidthPlan
    strassen_plan: WidthPlan


def compare_algorithms(A, B, plan: WidthPlan, threshold: int = 1, *,
                       max_qubits: int = DEFAULT_MAX_QUBITS,
                       circuit_cache: Optional[dict] = None) -> ComparisonReport:
    """Run both algorithms on the same input and report their stats side by side.

    ``plan`` is read as the basic plan; the Strassen run gets one extra sign bit.
    """
    basic_plan = replace(plan, sign_headroom=0,
                         accumulator_width=plan.accumulator_width - plan.sign_headroom)
    strassen_plan = replace(basic_plan, sign_headroom=1,
                            accumulator_width=basic_plan.accumulator_width + 1)
    C_basic, basic = qmatmul_basic(A, B, basic_plan, max_qubits=max_qubits,
                                   circuit_cache=circuit_cache)
    C_strassen, strassen = qmatmul_strassen(A, B, strassen_plan, threshold, max_qubits=max_qubits,
                                            circuit_cache=circuit_cache)
    if C_basic != C_strassen:
        raise InvariantError("basic and Strassen products differ")
    return ComparisonReport(C_basic, basic, strassen, basic_plan, strassen_plan)
