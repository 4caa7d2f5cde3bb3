"""
These are constants shared by the state, operator and measure modules.
Tolerances follow the verification contract: states are normalized to 1e-12,
Bloch vectors to 1e-9, and expectation values must be real to 1e-10.
"""

import numpy as np

ATOL = 1e-12  # Global numeric tolerance (norms, supports, angle range slack)
BLOCH_ATOL = 1e-9  # Unit-norm slack for Bloch vectors
IMAG_ATOL = 1e-10  # Largest imaginary residue tolerated in an expectation value

THETA_MIN = 0.0  # rad
THETA_MAX = np.pi / 2  # rad

CLASSICAL_BOUND = 2.0  # |<B>| for local hidden variable models
ALGEBRAIC_BOUND = 4.0  # Four +/-1-valued terms

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

PAULI_MATRICES = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

# Support of the family states, in the order the amplitude map stores them.
FAMILY_SUPPORT = (
    "0000",
    "1111",
    "0011",
    "1100",
    "0101",
    "1010",
    "0110",
    "1001",
)
FAMILY_SUPPORT_INDICES = tuple(int(label, 2) for label in FAMILY_SUPPORT)
