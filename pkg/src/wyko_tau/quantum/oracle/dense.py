"""Dense Kronecker-product reference operators.

Used to cross-check the matrix-free kernels in ``wyko_tau.quantum.pauli``;
nothing in the computation path depends on this module.
"""

from functools import reduce

import numpy as np

from wyko_tau.quantum.pauli import PauliString, PauliSum
from wyko_tau.quantum.qstate import StateVector


def pauli_string_matrix(p: PauliString) -> np.ndarray:
    return p.coefficient * reduce(np.kron, (s.matrix for s in p.symbols))


def pauli_sum_matrix(op: PauliSum, n_qubits: int) -> np.ndarray:
    dim = 2**n_qubits
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for term in op:
        matrix += pauli_string_matrix(term)
    return matrix


def local_operator_matrix(matrices) -> np.ndarray:
    """Kronecker product of per-qubit 2x2 matrices, ``None`` meaning identity."""
    return reduce(np.kron, (np.eye(2) if m is None else m for m in matrices))


def dense_apply(op: PauliSum, psi: StateVector) -> np.ndarray:
    return pauli_sum_matrix(op, psi.n_qubits) @ psi.amplitudes


def dense_expectation(op: PauliSum, psi: StateVector) -> complex:
    return complex(np.vdot(psi.amplitudes, dense_apply(op, psi)))
