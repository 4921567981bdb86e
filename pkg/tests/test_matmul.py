import numpy as np
import pytest

from qmatmul.matmul import (IntMatrix, WidthPlan, _Simulator, compare_algorithms,
                            inner_product_circuit, matmul_classical, qmatmul_basic,
                            qmatmul_strassen, strassen_classical, strassen_peak_qubits)
from qmatmul.errors import (InvariantError, QubitCapError, RangeError, StructuralError,
                            WidthPlanError)
from qmatmul.report import format_measurement
from qmatmul.statevector import init_basis_state, run_circuit

FIG5_A = [[1, 2], [3, 4]]
FIG5_B = [[2, 3], [4, 5]]
FIG5_C = [[10, 13], [22, 29]]


def oracle(A, B):
    """Schoolbook triple loop, independent of numpy's matmul."""
    A, B = np.asarray(A).tolist(), np.asarray(B).tolist()
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def test_int_matrix_validation():
    M = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert M.element_width == 3 and not M.signed and M.elements == (1, 2, 3, 4)
    S = IntMatrix.from_rows([[-4, 3]])
    assert S.signed and S.element_width == 3
    with pytest.raises(RangeError):
        IntMatrix([[8]], 3)
    with pytest.raises(RangeError):
        IntMatrix([[-5]], 3, signed=True)
    with pytest.raises(StructuralError):
        IntMatrix([[]], 3)


def test_matmul_classical_examples():
    B = [[5, 1], [2, 7]]
    assert matmul_classical([[1, 0], [0, 1]], B) == B
    assert matmul_classical(FIG5_A, FIG5_B) == FIG5_C
    assert matmul_classical([[0, 0], [0, 0]], B) == [[0, 0], [0, 0]]
    with pytest.raises(StructuralError):
        matmul_classical([[1, 2]], [[1, 2]])


def test_strassen_classical_examples(rng):
    assert strassen_classical(FIG5_A, FIG5_B) == FIG5_C
    A = rng.integers(0, 8, (4, 4))
    assert strassen_classical(A, np.eye(4, dtype=int)) == A
    for _ in range(100):
        A, B = rng.integers(0, 8, (4, 4)), rng.integers(0, 8, (4, 4))
        for threshold in (1, 2, 4):
            assert strassen_classical(A, B, threshold) == oracle(A, B)


def test_strassen_classical_rejects_bad_shapes():
    with pytest.raises(StructuralError):
        strassen_classical(np.ones((3, 3), int), np.ones((3, 3), int))
    with pytest.raises(StructuralError):
        strassen_classical(np.ones((2, 2), int), np.ones((2, 2), int), threshold=0)
    with pytest.raises(StructuralError):
        strassen_classical(np.ones((2, 4), int), np.ones((4, 2), int))


def test_width_plan_rule():
    assert WidthPlan.required_width(3, 2) == 7
    assert WidthPlan.required_width(3, 1) == 6
    assert WidthPlan.required_width(2, 4, 1) == 7
    for n in range(1, 6):
        plan = WidthPlan(n, 3 * n)
        assert plan.accepts(2**n) and not plan.accepts(2**n + 1)
    with pytest.raises(WidthPlanError):
        WidthPlan(3, 9).validate(9)
    with pytest.raises(WidthPlanError):
        WidthPlan(3, 9, sign_headroom=2)


def test_basic_fig5():
    C, stats = qmatmul_basic(FIG5_A, FIG5_B, WidthPlan(3, 12))
    assert C == FIG5_C
    assert stats.quantum_multiplications == 8 and stats.quantum_additions == 4
    assert stats.total_qubits_peak == 15
    c11 = stats.readouts[0]
    assert (c11.row, c11.col, c11.value) == (0, 0, 10)
    assert format_measurement(c11.raw, c11.width) == "0x500"
    assert all(ro.probability > 1 - 1e-9 for ro in stats.readouts)


def test_fig5_c11_register_state():
    circuit, acc = inner_product_circuit([1, 2], [2, 4], 3, 12)
    amps = run_circuit(init_basis_state(circuit.num_qubits), circuit).amplitudes
    # b-register (low 3 qubits) is returned to |0>, so the accumulator state is amps[::8]
    acc_state = amps.reshape(1 << 12, 1 << 3)[:, 0]
    overlap = abs(np.vdot(init_basis_state(12, 10).amplitudes, acc_state))
    assert overlap > 1 - 1e-9


def test_basic_zero_and_random(rng):
    zero = np.zeros((3, 3), int)
    B = rng.integers(0, 8, (3, 3))
    assert qmatmul_basic(zero, B, WidthPlan.minimal(3, 3))[0] == zero
    assert qmatmul_basic(B, zero, WidthPlan.minimal(3, 3))[0] == zero
    for _ in range(50):
        A, B = rng.integers(0, 8, (3, 3)), rng.integers(0, 8, (3, 3))
        C, stats = qmatmul_basic(A, B, WidthPlan.minimal(3, 3))
        assert C == oracle(A, B)
        assert stats.quantum_multiplications == 27


def test_basic_rectangular():
    A = [[1, 2, 3]]
    B = [[1], [0], [2]]
    C, stats = qmatmul_basic(A, B, WidthPlan.minimal(2, 3))
    assert C == [[7]] and stats.quantum_multiplications == 3


def test_basic_rejections():
    with pytest.raises(WidthPlanError):
        qmatmul_basic(np.full((2, 5), 7), np.full((5, 2), 7), WidthPlan(3, 8))
    with pytest.raises(RangeError):
        qmatmul_basic([[-1]], [[1]], WidthPlan(2, 4))
    with pytest.raises(RangeError):
        qmatmul_basic([[4]], [[1]], WidthPlan(2, 4))
    with pytest.raises(WidthPlanError):
        qmatmul_basic([[1]], [[1]], WidthPlan(2, 5, 1))
    with pytest.raises(StructuralError):
        qmatmul_basic([[1, 2]], [[1, 2]], WidthPlan(2, 5))
    with pytest.raises(QubitCapError):
        qmatmul_basic([[1]], [[1]], WidthPlan(3, 30))


def test_strassen_fig5():
    C, stats = qmatmul_strassen(FIG5_A, FIG5_B, WidthPlan.minimal(3, 2, 1))
    assert C == FIG5_C
    assert stats.quantum_multiplications == 7
    assert stats.quantum_additions == 18
    assert [ro.value for ro in stats.readouts] == [10, 13, 22, 29]


def test_strassen_all_ones_4x4():
    ones = np.ones((4, 4), int)
    C, stats = qmatmul_strassen(ones, ones, WidthPlan.minimal(1, 4, 1))
    assert C == np.full((4, 4), 4)
    assert stats.quantum_multiplications == 49
    # top level: 10 quadrant sums of 4 elements + outputs (3+1+1+3 terms-1) x 4 elements
    assert stats.quantum_additions == 10 * 4 + 8 * 4 + 7 * 18
    assert [(ro.row, ro.col) for ro in stats.readouts] == [(i, j) for i in range(4) for j in range(4)]


@pytest.mark.parametrize("threshold,mults", [(1, 49), (2, 7 * 8), (4, 64), (8, 64)])
def test_strassen_threshold_counts(threshold, mults, rng):
    A, B = rng.integers(0, 4, (4, 4)), rng.integers(0, 4, (4, 4))
    C, stats = qmatmul_strassen(A, B, WidthPlan.minimal(2, 4, 1), threshold)
    assert C == oracle(A, B)
    assert stats.quantum_multiplications == mults


def test_strassen_identity():
    B = [[3, 1], [2, 0]]
    assert qmatmul_strassen([[1, 0], [0, 1]], B, WidthPlan.minimal(2, 2, 1))[0] == B


def test_strassen_signed_inputs(rng):
    for _ in range(10):
        A, B = rng.integers(-4, 4, (4, 4)), rng.integers(-4, 4, (4, 4))
        sa, sb = IntMatrix(A, 3, signed=True), IntMatrix(B, 3, signed=True)
        C, _ = qmatmul_strassen(sa, sb, WidthPlan(3, 9, 1))
        assert C == oracle(A, B)


@pytest.mark.parametrize("fill", [7, -4])
def test_strassen_worst_case_intermediates(fill):
    """Extreme inputs drive every intermediate to its bound; each decode is oracle-checked."""
    M = IntMatrix(np.full((4, 4), fill), 3, signed=fill < 0)
    alt = IntMatrix(np.where(np.indices((4, 4)).sum(0) % 2, fill, 3 if fill < 0 else 0), 3,
                    signed=fill < 0)
    for A, B in ((M, M), (M, alt), (alt, M)):
        C, _ = qmatmul_strassen(A, B, WidthPlan(3, 9, 1))
        assert C == oracle(A.data, B.data)


def test_undersized_register_is_caught_not_wrapped():
    sim = _Simulator(26)
    with pytest.raises(InvariantError):
        sim.signed_sum([7, 7], 4)  # 14 does not fit a signed 4-bit register
    assert sim.signed_sum([7, -7], 4)[0] == 0


def test_strassen_rejections():
    with pytest.raises(WidthPlanError):
        qmatmul_strassen(FIG5_A, FIG5_B, WidthPlan(3, 12, 0))
    with pytest.raises(WidthPlanError):
        qmatmul_strassen(FIG5_A, FIG5_B, WidthPlan(3, 7, 1))
    with pytest.raises(StructuralError):
        qmatmul_strassen(np.ones((3, 3), int), np.ones((3, 3), int), WidthPlan(1, 6, 1))
    with pytest.raises(QubitCapError):
        qmatmul_strassen(FIG5_A, FIG5_B, WidthPlan.minimal(3, 2, 1), max_qubits=10)


def test_peak_qubit_prediction_matches_run(rng):
    for n, d in ((1, 2), (2, 4), (3, 4)):
        A, B = rng.integers(0, 1 << n, (d, d)), rng.integers(0, 1 << n, (d, d))
        plan = WidthPlan.minimal(n, d, 1)
        _, stats = qmatmul_strassen(A, B, plan)
        m = (1 << n) - 1
        assert stats.total_qubits_peak <= strassen_peak_qubits(d, m, m, 1, plan.accumulator_width)


def test_compare_all_ones():
    ones = np.ones((4, 4), int)
    report = compare_algorithms(ones, ones, WidthPlan.minimal(1, 4))
    assert report.C == np.full((4, 4), 4)
    assert report.basic.quantum_multiplications == 64
    assert report.strassen.quantum_multiplications == 49
    assert report.strassen.quantum_additions > report.basic.quantum_additions


def test_compare_fig5_and_1x1():
    assert compare_algorithms(FIG5_A, FIG5_B, WidthPlan(3, 12)).C == FIG5_C
    r = compare_algorithms([[3]], [[2]], WidthPlan.minimal(2, 1))
    assert r.C == [[6]]
    for key in ("quantum_multiplications", "quantum_additions", "circuits"):
        assert getattr(r.basic, key) == getattr(r.strassen, key)
    assert r.basic.quantum_multiplications == 1


def test_cache_does_not_change_results(rng):
    cache = {}
    A, B = rng.integers(0, 4, (4, 4)), rng.integers(0, 4, (4, 4))
    plain = qmatmul_strassen(A, B, WidthPlan.minimal(2, 4, 1))
    cached1 = qmatmul_strassen(A, B, WidthPlan.minimal(2, 4, 1), circuit_cache=cache)
    cached2 = qmatmul_strassen(A, B, WidthPlan.minimal(2, 4, 1), circuit_cache=cache)
    for C, stats in (cached1, cached2):
        assert C == plain[0]
        assert stats.total_counted_gates == plain[1].total_counted_gates
        assert stats.circuits == plain[1].circuits
