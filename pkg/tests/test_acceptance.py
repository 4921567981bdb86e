"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible even without ``-s``)
and then asserts, so the pytest verdict and the printed line always agree.
"""
import cmath
import itertools
import math
import time

import numpy as np
import pytest

from qmatmul.arithmetic import (SignedOperand, UIntOperand, build_adder_optimized,
                                build_adder_original, build_multiplier_optimized,
                                build_multiplier_original, decode_signed, load_value,
                                multiplier_phase_stage, signed_add_constant)
from qmatmul.circuit import Circuit, Register, census, new_circuit
from qmatmul.cli import RunConfig, run
from qmatmul.matmul import WidthPlan, compare_algorithms, qmatmul_basic, qmatmul_strassen
from qmatmul.qft import build_iqft, build_qft, fourier_qubit
from qmatmul.resources import build_construction
from qmatmul.statevector import init_basis_state, readout, run_circuit

from conftest import simulate

DET = 1 - 1e-9


@pytest.fixture
def verdict(pytestconfig):
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")

    def report(number, title, failures, detail=""):
        line = f"criterion {number} {'PASS' if not failures else 'FAIL'}: {title}"
        if detail:
            line += f" ({detail})"
        if failures:
            line += "\n    " + "\n    ".join(str(f) for f in failures[:10])
        with capman.global_and_fixture_disabled():
            print("\n" + line)
        assert not failures, line

    return report


def schoolbook(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def test_criterion_1_worked_example(verdict):
    start = time.perf_counter()
    code, _ = run(RunConfig("multiply", "1,2;3,4", "2,3;4,5", element_width=3, acc_width=12))
    C, stats = qmatmul_basic([[1, 2], [3, 4]], [[2, 3], [4, 5]], WidthPlan(3, 12))
    elapsed = time.perf_counter() - start
    failures = []
    if code != 0:
        failures.append(f"CLI exit code {code}")
    if C != [[10, 13], [22, 29]]:
        failures.append(f"C = {C.tolist()}")
    low = [ro for ro in stats.readouts if ro.probability <= DET]
    if low:
        failures.append(f"low readout probability: {low}")
    from qmatmul.report import format_measurement
    c11 = stats.readouts[0]
    if format_measurement(c11.raw, c11.width) != "0x500":
        failures.append(f"c11 formatted {format_measurement(c11.raw, c11.width)}")
    if elapsed >= 10:
        failures.append(f"took {elapsed:.2f}s")
    verdict(1, "2x2 worked example, C=[[10,13],[22,29]], c11=0x500", failures, f"{elapsed:.2f}s")


def test_criterion_2_resource_formulas(verdict):
    expected = {
        "adder_original": lambda n: ((n * n + 3 * n) // 2, 2 * n + 1),
        "adder_optimized": lambda n: (n + 1, n + 1),
        "multiplier_original": lambda n: (2 * n**3, 4 * n),
        "multiplier_optimized": lambda n: ((3 * n * n + n) // 2, 3 * n),
    }
    failures = []
    for name, formula in expected.items():
        for n in range(1, 7):
            circuit = build_construction(name, n)
            got = (census(circuit).counted, circuit.num_qubits)
            if got != formula(n):
                failures.append(f"{name} n={n}: built {got}, formula {formula(n)}")
    verdict(2, "gate and qubit formulas, four constructions, n=1..6", failures)


def _read(circuit, name, **values):
    value, p = readout(simulate(circuit, **values), circuit.register(name))
    return value if p > DET else None


def test_criterion_3_exhaustive_arithmetic(verdict):
    start = time.perf_counter()
    failures, checked = [], 0
    for n in range(1, 5):
        lay = new_circuit([("a", n), ("acc", n + 1)])
        orig = build_adder_original(lay.register("a"), lay.register("acc"))
        acc = new_circuit([("acc", n + 1)]).register("acc")
        for a in range(1 << n):
            opt = build_adder_optimized(UIntOperand(a, n), acc)
            for x in range(1 << n):
                checked += 2
                if _read(orig, "acc", a=a, acc=x) != a + x:
                    failures.append(f"original adder n={n} {a}+{x}")
                if _read(opt, "acc", acc=x) != a + x:
                    failures.append(f"optimized adder n={n} {a}+{x}")
    for n in range(1, 4):
        lay = new_circuit([("a", n), ("b", n), ("out", 2 * n)])
        orig = build_multiplier_original(lay.register("a"), lay.register("b"), lay.register("out"))
        lay2 = new_circuit([("b", n), ("out", 2 * n)])
        for a in range(1 << n):
            opt = build_multiplier_optimized(UIntOperand(a, n), lay2.register("b"), lay2.register("out"))
            for b in range(1 << n):
                checked += 2
                if _read(orig, "out", a=a, b=b) != a * b:
                    failures.append(f"original multiplier n={n} {a}*{b}")
                if _read(opt, "out", b=b) != a * b:
                    failures.append(f"optimized multiplier n={n} {a}*{b}")
    for m in range(1, 6):
        half = 1 << (m - 1)
        acc = new_circuit([("acc", m)]).register("acc")
        for k in range(-half, half):
            c = signed_add_constant(SignedOperand(k, m), acc)
            for x in range(-half, half):
                if -half <= x + k < half:
                    checked += 1
                    raw = _read(c, "acc", acc=x % (1 << m))
                    if raw is None or decode_signed(raw, m) != x + k:
                        failures.append(f"signed add m={m} {x}+{k}")
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        failures.append(f"took {elapsed:.1f}s")
    verdict(3, "exhaustive adders n<=4, multipliers n<=3, signed adds m<=5", failures,
            f"{checked} cases, {elapsed:.1f}s")


def test_criterion_4_qft_spectrum(verdict):
    failures, worst = [], 0.0
    for w in range(1, 7):
        reg = Register("x", 0, w)
        qft = build_qft(reg)
        out = qft.output_register("x")
        roundtrip = Circuit(w, [reg]).compose(build_qft(reg)).compose(build_iqft(reg))
        N = 1 << w
        k = np.arange(N)
        for j in range(N):
            amps = run_circuit(init_basis_state(w, j), qft).amplitudes
            expected = np.empty(N, dtype=complex)
            expected[[out.encode(int(v)) for v in k]] = np.exp(2j * np.pi * j * k / N) / np.sqrt(N)
            err = np.max(np.abs(amps - expected))
            back = np.max(np.abs(run_circuit(init_basis_state(w, j), roundtrip).amplitudes
                                 - init_basis_state(w, j).amplitudes))
            worst = max(worst, err, back)
            if err >= 1e-10:
                failures.append(f"w={w} j={j}: spectral error {err:.2e}")
            if back >= 1e-10:
                failures.append(f"w={w} j={j}: round-trip error {back:.2e}")
    verdict(4, "QFT closed form and inverse, w<=6, tol 1e-10", failures, f"max error {worst:.1e}")


def test_criterion_5_phase_checkpoint(verdict):
    rng = np.random.default_rng(5)
    n, failures, worst = 3, [], 0.0
    lay = new_circuit([("b", n), ("out", 2 * n)])
    b_reg, out = lay.register("b"), lay.register("out")
    for _ in range(20):
        a, b = (int(v) for v in rng.integers(0, 1 << n, 2))
        c = Circuit(lay.num_qubits, lay.registers)
        c.compose(load_value(b_reg, b, lay.num_qubits))
        c.compose(build_qft(out, lay.num_qubits))
        c.compose(multiplier_phase_stage(UIntOperand(a, n), b_reg, out))
        amps = run_circuit(init_basis_state(lay.num_qubits), c).amplitudes
        base = b_reg.encode(b)
        for l in range(1, 2 * n + 1):
            ratio = amps[base | (1 << fourier_qubit(out, l))] / amps[base]
            d = (cmath.phase(ratio) - 2 * math.pi * a * b / 2**l) % (2 * math.pi)
            err = max(min(d, 2 * math.pi - d), abs(abs(ratio) - 1))
            worst = max(worst, err)
            if err >= 1e-9:
                failures.append(f"a={a} b={b} l={l}: phase error {err:.2e}")
    verdict(5, "pre-IQFT phases 2*pi*a*b/2^l, 20 random pairs at n=3, tol 1e-9", failures,
            f"max error {worst:.1e}")


@pytest.mark.slow
def test_criterion_6_matmul_oracle(verdict):
    start = time.perf_counter()
    failures, cache = [], {}
    basic_plan, strassen_plan = WidthPlan.minimal(2, 2), WidthPlan.minimal(2, 2, 1)
    exhaustive = 0
    for flat in itertools.product(range(4), repeat=8):
        A = [list(flat[0:2]), list(flat[2:4])]
        B = [list(flat[4:6]), list(flat[6:8])]
        want = schoolbook(A, B)
        exhaustive += 1
        if qmatmul_basic(A, B, basic_plan, circuit_cache=cache)[0] != want:
            failures.append(f"basic {A} x {B}")
        if qmatmul_strassen(A, B, strassen_plan, circuit_cache=cache)[0] != want:
            failures.append(f"strassen {A} x {B}")
    rng = np.random.default_rng(6)
    for case in range(200):
        d, n = int(rng.choice([1, 2, 4])), int(rng.integers(1, 4))
        A, B = rng.integers(0, 1 << n, (d, d)), rng.integers(0, 1 << n, (d, d))
        want = schoolbook(A.tolist(), B.tolist())
        if qmatmul_basic(A, B, WidthPlan.minimal(n, d), circuit_cache=cache)[0] != want:
            failures.append(f"random case {case} basic d={d} n={n}")
        if qmatmul_strassen(A, B, WidthPlan.minimal(n, d, 1), circuit_cache=cache)[0] != want:
            failures.append(f"random case {case} strassen d={d} n={n}")
    elapsed = time.perf_counter() - start
    verdict(6, "quantum product equals classical, exhaustive 2x2 n=2 and 200 random, both paths",
            failures, f"{exhaustive} + 200 cases per path, {elapsed:.1f}s")


def test_criterion_7_operation_counts(verdict):
    rng = np.random.default_rng(7)
    A, B = rng.integers(0, 4, (4, 4)), rng.integers(0, 4, (4, 4))
    r = compare_algorithms(A, B, WidthPlan.minimal(2, 4))
    failures = []
    if r.C != schoolbook(A.tolist(), B.tolist()):
        failures.append("product mismatch")
    if r.basic.quantum_multiplications != 64:
        failures.append(f"basic multiplications {r.basic.quantum_multiplications}")
    if r.strassen.quantum_multiplications != 49:
        failures.append(f"strassen multiplications {r.strassen.quantum_multiplications}")
    if not r.strassen.quantum_additions > r.basic.quantum_additions:
        failures.append(f"additions strassen {r.strassen.quantum_additions} "
                        f"<= basic {r.basic.quantum_additions}")
    verdict(7, "4x4 multiplications 64 vs 49, Strassen additions exceed basic", failures,
            f"additions {r.basic.quantum_additions} vs {r.strassen.quantum_additions}")


def test_criterion_8_capacity_bound(verdict):
    failures = []
    for n in range(1, 9):
        plan = WidthPlan(n, 3 * n)
        if not plan.accepts(2**n):
            failures.append(f"n={n}: rejects k=2^n")
        if plan.accepts(2**n + 1):
            failures.append(f"n={n}: accepts k=2^n+1")
    verdict(8, "width 3n accepts k=2^n and rejects k=2^n+1, n=1..8", failures)


def test_criterion_9_optimized_dominance(verdict):
    failures = []
    for n in range(1, 9):
        for orig, opt in (("adder_original", "adder_optimized"),
                          ("multiplier_original", "multiplier_optimized")):
            g_orig = census(build_construction(orig, n, max_qubits=64)).counted
            g_opt = census(build_construction(opt, n, max_qubits=64)).counted
            if not g_opt < g_orig:
                failures.append(f"n={n}: {opt} {g_opt} gates not below {orig} {g_orig}")
    verdict(9, "optimized counted gates strictly below original, n=1..8", failures)
