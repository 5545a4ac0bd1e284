from pathlib import Path

import numpy as np
import pytest

from oqec import QuantumChannel, SubsystemDecomposition, tensor

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def bitflip_code() -> SubsystemDecomposition:
    """span{|000>, |111>} inside three qubits, as an m = 1 decomposition."""
    basis = np.zeros((8, 2), dtype=complex)
    basis[0, 0] = 1.0
    basis[7, 1] = 1.0
    return SubsystemDecomposition.subspace(basis)


@pytest.fixture(scope="session")
def bitflip_channel() -> QuantumChannel:
    """Uniform single-qubit bit flips on three qubits."""
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    ops = [
        tensor(x, tensor(eye, eye)),
        tensor(eye, tensor(x, eye)),
        tensor(eye, tensor(eye, x)),
    ]
    return QuantumChannel.from_kraus([op / np.sqrt(3) for op in ops])
