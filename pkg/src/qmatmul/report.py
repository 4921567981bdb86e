"""Text, JSON and CSV rendering for the command-line front end."""
from __future__ import annotations

import csv
import io
import json

from .matmul import ComparisonReport, IntMatrix, MatmulStats
from .resources import ResourceReport

CSV_COLUMNS = ("construction", "n_or_dim", "qubits", "gates", "additions", "multiplications", "seconds")


def format_measurement(value: int, register_width: int) -> str:
    """Render a register reading the way the simulator's histogram shows it.

    The value is written as ``register_width`` bits, the bit string is
    reversed, and the result is printed as zero-padded hex:
    ``format_measurement(10, 12) == "0x500"``.
    """
    if not 0 <= value < (1 << register_width):
        raise ValueError(f"{value} does not fit in {register_width} bits")
    reversed_bits = format(value, f"0{register_width}b")[::-1]
    digits = -(-register_width // 4)
    return f"0x{int(reversed_bits, 2):0{digits}x}"


def parse_measurement(text: str, register_width: int) -> int:
    """Inverse of :func:`format_measurement`."""
    raw = int(text, 16)
    if raw >= 1 << register_width:
        raise ValueError(f"{text} does not fit in {register_width} bits")
    return int(format(raw, f"0{register_width}b")[::-1], 2)


def _matrix_lines(M: IntMatrix, indent: str = "  ") -> list[str]:
    cell = max(len(str(v)) for v in M.elements)
    return [indent + " ".join(f"{v:>{cell}}" for v in row) for row in M.tolist()]


def _stats_lines(stats: MatmulStats) -> list[str]:
    return [f"  {key.replace('_', ' '):<26}{value:.4f}" if key == "wall_time"
            else f"  {key.replace('_', ' '):<26}{value}"
            for key, value in stats.as_dict().items()]


def measurements(stats: MatmulStats) -> list[dict]:
    return [
        {
            "element": f"c{ro.row + 1}{ro.col + 1}",
            "row": ro.row,
            "col": ro.col,
            "value": ro.value,
            "raw": ro.raw,
            "width": ro.width,
            "hex": format_measurement(ro.raw, ro.width),
            "probability": ro.probability,
        }
        for ro in stats.readouts
    ]


def matmul_payload(command: str, A: IntMatrix, B: IntMatrix, C: IntMatrix, stats: MatmulStats,
                   plan, threshold=None) -> dict:
    payload = {
        "command": command,
        "element_width": plan.operand_width,
        "accumulator_width": plan.accumulator_width,
        "sign_headroom": plan.sign_headroom,
        "A": A.tolist(),
        "B": B.tolist(),
        "C": C.tolist(),
        "measurements": measurements(stats),
        "stats": stats.as_dict(),
    }
    if threshold is not None:
        payload["threshold"] = threshold
    return payload


def render_matmul(payload: dict, C: IntMatrix, stats: MatmulStats, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv([_stats_row(payload["command"], C.rows, stats)])
    lines = [
        f"C = A x B  ({payload['command']}, n={payload['element_width']}, "
        f"accumulator {payload['accumulator_width']} qubits)",
        *_matrix_lines(C),
        "",
        f"  {'element':<9}{'value':>8}  {'measured':<10}probability",
    ]
    for m in payload["measurements"]:
        lines.append(f"  {m['element']:<9}{m['value']:>8}  {m['hex']:<10}{m['probability']:.12f}")
    lines += ["", "stats:", *_stats_lines(stats)]
    return "\n".join(lines)


def _stats_row(construction: str, dim: int, stats: MatmulStats) -> dict:
    return {
        "construction": construction,
        "n_or_dim": dim,
        "qubits": stats.total_qubits_peak,
        "gates": stats.total_counted_gates,
        "additions": stats.quantum_additions,
        "multiplications": stats.quantum_multiplications,
        "seconds": f"{stats.wall_time:.6f}",
    }


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def comparison_payload(A: IntMatrix, B: IntMatrix, report: ComparisonReport, threshold: int) -> dict:
    return {
        "command": "compare",
        "element_width": report.basic_plan.operand_width,
        "threshold": threshold,
        "A": A.tolist(),
        "B": B.tolist(),
        "C": report.C.tolist(),
        "basic": {"accumulator_width": report.basic_plan.accumulator_width,
                  "stats": report.basic.as_dict()},
        "strassen": {"accumulator_width": report.strassen_plan.accumulator_width,
                     "stats": report.strassen.as_dict()},
    }


def render_comparison(payload: dict, report: ComparisonReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    dim = report.C.rows
    if fmt == "csv":
        return _csv([_stats_row("basic", dim, report.basic),
                     _stats_row("strassen", dim, report.strassen)])
    b, s = report.basic.as_dict(), report.strassen.as_dict()
    lines = [f"C = A x B  ({dim}x{dim}, n={payload['element_width']}, "
             f"Strassen threshold {payload['threshold']})", *_matrix_lines(report.C), "",
             f"  {'':<26}{'basic':>12}{'strassen':>12}"]
    for key in b:
        if key == "wall_time":
            lines.append(f"  {'wall time (s)':<26}{b[key]:>12.4f}{s[key]:>12.4f}")
        else:
            lines.append(f"  {key.replace('_', ' '):<26}{b[key]:>12}{s[key]:>12}")
    return "\n".join(lines)


def resources_payload(rows: list[ResourceReport]) -> dict:
    return {
        "command": "resources",
        "rows": [
            {"construction": r.construction, "n": r.n, "qubits": r.qubits, "gates": r.gates,
             "built_qubits": r.built_qubits, "built_gates": r.built_gates}
            for r in rows
        ],
    }


def render_resources(payload: dict, rows: list[ResourceReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv([
            {"construction": r.construction, "n_or_dim": r.n,
             "qubits": "" if r.qubits is None else r.qubits, "gates": r.gates,
             "additions": 1 if r.construction.startswith("adder") else 0,
             "multiplications": 1 if r.construction.startswith("multiplier") else 0,
             "seconds": ""}
            for r in rows
        ])
    constructions = list(dict.fromkeys(r.construction for r in rows))
    ns = sorted({r.n for r in rows})
    table = {(r.construction, r.n): r for r in rows}
    header = f"  {'construction':<22}{'':<8}" + "".join(f"{'n=' + str(n):>8}" for n in ns)
    lines = [header]
    for c in constructions:
        for label, attr in (("qubits", "qubits"), ("gates", "gates")):
            cells = []
            for n in ns:
                value = getattr(table[(c, n)], attr)
                cells.append(f"{'-' if value is None else value:>8}")
            lines.append(f"  {c if label == 'qubits' else '':<22}{label:<8}" + "".join(cells))
    return "\n".join(lines)
