import numpy as np
import pytest

from qmatmul.arithmetic import load_value
from qmatmul.circuit import Circuit
from qmatmul.statevector import init_basis_state, run_circuit


def simulate(circuit: Circuit, **values: int):
    """Load ``values`` into the named registers, then run ``circuit`` from |0...0>."""
    host = Circuit(circuit.num_qubits, circuit.registers)
    for name, value in values.items():
        host.compose(load_value(circuit.register(name), value, circuit.num_qubits))
    host.compose(circuit)
    return run_circuit(init_basis_state(circuit.num_qubits), host)


def random_state(rng, num_qubits):
    v = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
