"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 constraint violation, 4 internal
invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import report
from .circuit import export_gatelist, new_circuit
from .errors import InvariantError, QMatMulError
from .matmul import (IntMatrix, WidthPlan, compare_algorithms, qmatmul_basic,
                     qmatmul_strassen)
from .qft import build_qft
from .resources import QUANTUM_CONSTRUCTIONS, build_construction, resource_table
from .statevector import DEFAULT_MAX_QUBITS

EXIT_OK, EXIT_USAGE, EXIT_CONSTRAINT, EXIT_INTERNAL = 0, 2, 3, 4
COMMANDS = ("multiply", "strassen", "compare", "resources", "export")
EXPORTABLE = QUANTUM_CONSTRUCTIONS + ("qft", "iqft")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    matrix_a: Optional[str] = None
    matrix_b: Optional[str] = None
    element_width: Optional[int] = None
    acc_width: Optional[int] = None
    threshold: int = 1
    output_format: str = "human"
    seed: int = 0
    random_dim: Optional[int] = None
    n_min: int = 1
    n_max: int = 6
    construction: Optional[str] = None
    constant: Optional[int] = None
    output: Optional[str] = None
    max_qubits: int = DEFAULT_MAX_QUBITS


def parse_matrix(source: str) -> np.ndarray:
    """Read a matrix from a file or an inline ``"1,2;3,4"`` string.

    Files hold ``rows cols`` on the first line, then row-major integers.
    """
    path = Path(source)
    if path.is_file():
        tokens = path.read_text().split()
        try:
            rows, cols, *values = (int(t) for t in tokens)
        except ValueError as exc:
            raise UsageError(f"{source}: non-integer token in matrix file") from exc
        if rows < 1 or cols < 1 or len(values) != rows * cols:
            raise UsageError(f"{source}: expected {rows}x{cols} values, found {len(values)}")
        return np.array(values, dtype=np.int64).reshape(rows, cols)
    try:
        rows = [[int(v) for v in row.replace(",", " ").split()] for row in source.split(";")]
    except ValueError as exc:
        raise UsageError(f"cannot parse matrix {source!r}: not a file or inline 'a,b;c,d'") from exc
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError(f"matrix {source!r} is empty or ragged")
    return np.array(rows, dtype=np.int64)


def write_matrix(M, path) -> None:
    arr = np.asarray(M)
    lines = [f"{arr.shape[0]} {arr.shape[1]}"] + [" ".join(str(v) for v in row) for row in arr]
    Path(path).write_text("\n".join(lines) + "\n")


def _inputs(config: RunConfig):
    if config.random_dim is not None:
        n = config.element_width or 3
        if config.random_dim < 1:
            raise UsageError("--random needs a positive dimension")
        rng = np.random.default_rng(config.seed)
        shape = (config.random_dim, config.random_dim)
        a, b = rng.integers(0, 1 << n, shape), rng.integers(0, 1 << n, shape)
    else:
        if config.matrix_a is None or config.matrix_b is None:
            raise UsageError("give both -a and -b, or --random DIM")
        a, b = parse_matrix(config.matrix_a), parse_matrix(config.matrix_b)
    if a.min() < 0 or b.min() < 0:
        n = config.element_width or int(max(np.abs(a).max(), np.abs(b).max())).bit_length() + 1
        return IntMatrix(a, n, signed=True), IntMatrix(b, n, signed=True), n
    n = config.element_width or max(int(a.max()).bit_length(), int(b.max()).bit_length(), 1)
    return IntMatrix(a, n), IntMatrix(b, n), n


def _plan(n: int, k: int, acc_width: Optional[int], sign_headroom: int) -> WidthPlan:
    if acc_width is None:
        plan = WidthPlan.minimal(n, k, sign_headroom)
        if sign_headroom:
            need = (k * ((1 << n) - 1) ** 2).bit_length() + 1
            plan = WidthPlan(n, max(plan.accumulator_width, need), 1)
        return plan
    return WidthPlan(n, acc_width, sign_headroom)


def _run_matmul(config: RunConfig) -> str:
    A, B, n = _inputs(config)
    if config.command == "multiply":
        plan = _plan(n, A.cols, config.acc_width, 0)
        C, stats = qmatmul_basic(A, B, plan, max_qubits=config.max_qubits)
        payload = report.matmul_payload("multiply", A, B, C, stats, plan)
        return report.render_matmul(payload, C, stats, config.output_format)
    if config.command == "strassen":
        plan = _plan(n, A.cols, config.acc_width, 1)
        C, stats = qmatmul_strassen(A, B, plan, config.threshold, max_qubits=config.max_qubits)
        payload = report.matmul_payload("strassen", A, B, C, stats, plan, config.threshold)
        return report.render_matmul(payload, C, stats, config.output_format)
    plan = _plan(n, A.cols, config.acc_width, 0)
    result = compare_algorithms(A, B, plan, config.threshold, max_qubits=config.max_qubits)
    payload = report.comparison_payload(A, B, result, config.threshold)
    return report.render_comparison(payload, result, config.output_format)


def _run_export(config: RunConfig) -> str:
    n = config.element_width or 3
    if config.construction not in EXPORTABLE:
        raise UsageError(f"--construction must be one of {', '.join(EXPORTABLE)}")
    if config.construction in ("qft", "iqft"):
        reg = new_circuit([("x", n)]).register("x")
        circuit = build_qft(reg)
        if config.construction == "iqft":
            circuit = circuit.inverse()
    else:
        circuit = build_construction(config.construction, n, config.constant)
    text = export_gatelist(circuit)
    if config.output:
        Path(config.output).write_text(text)
    if config.output_format == "json":
        census = circuit.census()
        payload = {"command": "export", "construction": config.construction, "n": n,
                   "qubits": circuit.num_qubits, "gates": census.total,
                   "counted": census.counted, "path": config.output}
        if not config.output:
            payload["gatelist"] = text
        return json.dumps(payload, indent=2)
    if config.output:
        return f"wrote {len(circuit)} gates on {circuit.num_qubits} qubits to {config.output}"
    return text.rstrip("\n")


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit_code, text)``."""
    try:
        if config.output_format not in ("human", "json", "csv"):
            raise UsageError(f"unknown output format {config.output_format!r}")
        if config.command in ("multiply", "strassen", "compare"):
            return EXIT_OK, _run_matmul(config)
        if config.command == "resources":
            if not 1 <= config.n_min <= config.n_max:
                raise UsageError("need 1 <= --n-min <= --n-max")
            rows = resource_table(range(config.n_min, config.n_max + 1))
            payload = report.resources_payload(rows)
            return EXIT_OK, report.render_resources(payload, rows, config.output_format)
        if config.command == "export":
            return EXIT_OK, _run_export(config)
        raise UsageError(f"unknown command {config.command!r}")
    except UsageError as exc:
        return EXIT_USAGE, f"usage error: {exc}"
    except InvariantError as exc:
        return EXIT_INTERNAL, f"internal invariant failed: {exc}"
    except QMatMulError as exc:
        return EXIT_CONSTRAINT, f"constraint violated ({type(exc).__name__}): {exc}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmatmul", description="QFT-arithmetic quantum matrix multiplication on a statevector simulator."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", dest="output_format", choices=("human", "json", "csv"),
                       default="human")
        p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)

    for name, help_text in (("multiply", "basic inner-product multiplication"),
                            ("strassen", "quantum Strassen multiplication"),
                            ("compare", "run both and compare operation counts")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-a", "--matrix-a", help="matrix file or inline '1,2;3,4'")
        p.add_argument("-b", "--matrix-b", help="matrix file or inline '1,2;3,4'")
        p.add_argument("-n", "--element-width", type=int, help="operand bits (default: inferred)")
        p.add_argument("--acc-width", type=int, help="output accumulator qubits")
        p.add_argument("--random", dest="random_dim", type=int, metavar="DIM",
                       help="use random DIMxDIM matrices with n-bit elements")
        p.add_argument("--seed", type=int, default=0)
        if name != "multiply":
            p.add_argument("--threshold", type=int, default=1, help="Strassen leaf dimension")
        common(p)

    p = sub.add_parser("resources", help="qubit and gate counts per construction")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=6)
    common(p)

    p = sub.add_parser("export", help="write a construction as a gate list")
    p.add_argument("--construction", required=True, choices=EXPORTABLE)
    p.add_argument("-n", "--element-width", type=int, default=3)
    p.add_argument("--constant", type=int, help="classical operand of the optimized forms")
    p.add_argument("-o", "--output", help="file to write (default: stdout)")
    common(p)
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    fields = RunConfig.__dataclass_fields__
    config = RunConfig(**{k: v for k, v in args.items() if k in fields})
    code, text = run(config)
    print(text, file=sys.stderr if code else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
