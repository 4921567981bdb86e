"""JSON Schemas for ``--format json`` output, one per command."""

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

_STATS = {
    "type": "object",
    "required": ["quantum_multiplications", "quantum_additions", "total_counted_gates",
                 "total_qubits_peak", "wall_time", "circuits"],
    "properties": {
        "quantum_multiplications": {"type": "integer", "minimum": 0},
        "quantum_additions": {"type": "integer", "minimum": 0},
        "total_counted_gates": {"type": "integer", "minimum": 0},
        "total_qubits_peak": {"type": "integer", "minimum": 0},
        "wall_time": {"type": "number", "minimum": 0},
        "circuits": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

_MEASUREMENT = {
    "type": "object",
    "required": ["element", "row", "col", "value", "raw", "width", "hex", "probability"],
    "properties": {
        "element": {"type": "string", "pattern": "^c[0-9]+$"},
        "row": {"type": "integer", "minimum": 0},
        "col": {"type": "integer", "minimum": 0},
        "value": {"type": "integer"},
        "raw": {"type": "integer", "minimum": 0},
        "width": {"type": "integer", "minimum": 1},
        "hex": {"type": "string", "pattern": "^0x[0-9a-f]+$"},
        "probability": {"type": "number", "minimum": 0, "maximum": 1.0000001},
    },
}

MATMUL_SCHEMA = {
    "type": "object",
    "required": ["command", "element_width", "accumulator_width", "sign_headroom",
                 "A", "B", "C", "measurements", "stats"],
    "properties": {
        "command": {"enum": ["multiply", "strassen"]},
        "element_width": {"type": "integer", "minimum": 1},
        "accumulator_width": {"type": "integer", "minimum": 1},
        "sign_headroom": {"enum": [0, 1]},
        "threshold": {"type": "integer", "minimum": 1},
        "A": _MATRIX,
        "B": _MATRIX,
        "C": _MATRIX,
        "measurements": {"type": "array", "items": _MEASUREMENT},
        "stats": _STATS,
    },
}

COMPARE_SCHEMA = {
    "type": "object",
    "required": ["command", "element_width", "threshold", "A", "B", "C", "basic", "strassen"],
    "properties": {
        "command": {"const": "compare"},
        "element_width": {"type": "integer", "minimum": 1},
        "threshold": {"type": "integer", "minimum": 1},
        "A": _MATRIX,
        "B": _MATRIX,
        "C": _MATRIX,
        "basic": {"type": "object", "required": ["accumulator_width", "stats"],
                  "properties": {"accumulator_width": {"type": "integer"}, "stats": _STATS}},
        "strassen": {"type": "object", "required": ["accumulator_width", "stats"],
                     "properties": {"accumulator_width": {"type": "integer"}, "stats": _STATS}},
    },
}

RESOURCES_SCHEMA = {
    "type": "object",
    "required": ["command", "rows"],
    "properties": {
        "command": {"const": "resources"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["construction", "n", "qubits", "gates", "built_qubits", "built_gates"],
                "properties": {
                    "construction": {"type": "string"},
                    "n": {"type": "integer", "minimum": 1},
                    "qubits": {"type": ["integer", "null"]},
                    "gates": {"type": "integer", "minimum": 0},
                    "built_qubits": {"type": ["integer", "null"]},
                    "built_gates": {"type": ["integer", "null"]},
                },
            },
        },
    },
}

EXPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "construction", "n", "qubits", "gates", "counted", "path"],
    "properties": {
        "command": {"const": "export"},
        "construction": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "qubits": {"type": "integer", "minimum": 1},
        "gates": {"type": "integer", "minimum": 0},
        "counted": {"type": "integer", "minimum": 0},
        "path": {"type": ["string", "null"]},
        "gatelist": {"type": "string"},
    },
}

SCHEMAS = {
    "multiply": MATMUL_SCHEMA,
    "strassen": MATMUL_SCHEMA,
    "compare": COMPARE_SCHEMA,
    "resources": RESOURCES_SCHEMA,
    "export": EXPORT_SCHEMA,
}
