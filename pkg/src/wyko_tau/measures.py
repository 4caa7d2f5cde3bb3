"""Entanglement measures tau_n and tau_(4,8) for the four-qubit family.

Each measure is available as a state-vector computation and as the
closed form in (theta1, theta2); the two must agree on every family state.
"""

import logging
from dataclasses import dataclass, fields

import numpy as np

from wyko_tau.errors import DomainError
from wyko_tau.quantum.constants import ATOL, FAMILY_SUPPORT_INDICES
from wyko_tau.quantum.pauli import PauliString, apply_pauli_string
from wyko_tau.quantum.qstate import (
    FamilyParams,
    StateVector,
    check_angle,
    inner_product,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmplitudeMap:
    """The eight amplitudes a_{i1i2i3i4} spanning the family's support."""

    a0000: complex
    a1111: complex
    a0011: complex
    a1100: complex
    a0101: complex
    a1010: complex
    a0110: complex
    a1001: complex

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))


def extract_amplitudes(psi: StateVector) -> AmplitudeMap:
    """Read the support amplitudes of a four-qubit state.

    Raises DomainError if any amplitude outside the eight support kets
    exceeds 1e-12 in magnitude.
    """
    if psi.n_qubits != 4:
        err_msg = f"Amplitude map needs a 4-qubit state, got {psi.n_qubits} qubits"
        logger.error(err_msg)
        raise ValueError(err_msg)
    off_support = np.delete(psi.amplitudes, FAMILY_SUPPORT_INDICES)
    leak = float(np.max(np.abs(off_support)))
    if leak > ATOL:
        err_msg = (
            f"State has amplitude {leak:.3e} outside the family support;"
            + " the tau_(4,8) amplitude formula does not apply"
        )
        logger.error(err_msg)
        raise DomainError(err_msg)
    return AmplitudeMap(*(complex(psi.amplitudes[i]) for i in FAMILY_SUPPORT_INDICES))


def tau_n(psi: StateVector) -> float:
    """|<psi|psi~>|^2 with psi~ = sigma_y^(x)n |psi*>, for even n."""
    n = psi.n_qubits
    if n % 2:
        err_msg = f"tau_n is defined for an even number of qubits, got {n}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    spin_flipped = apply_pauli_string(PauliString(("Y",) * n), psi.conjugate())
    return abs(inner_product(psi, spin_flipped)) ** 2


def tau_n_closed(params: FamilyParams) -> float:
    t1, t2 = params.theta1, params.theta2
    return float(np.sin(t1 - t2) ** 2 * np.sin(t1 + t2) ** 2)


def invariant_48(a: AmplitudeMap) -> complex:
    """Degree-8 invariant I_(4,8) of a state supported on the family kets."""
    pairs = (
        a.a0000 * a.a1111 + a.a0011 * a.a1100 - a.a0101 * a.a1010 - a.a0110 * a.a1001
    )
    quads = (
        a.a0000 * a.a1100 * a.a0011 * a.a1111 + a.a0110 * a.a1010 * a.a0101 * a.a1001
    )
    inner = pairs**2 / 6 - 2 * quads / 3
    return 3 * inner**2 + 16 * complex(np.prod(a.values()))


def tau48_amplitudes(a: AmplitudeMap) -> float:
    """tau_(4,8) = 4 |sqrt(12 I_(4,8))| from the support amplitudes.

    4 sqrt(12) = 8 sqrt(3), so this is the same expression as the
    8 sqrt(3) |{...}^(1/2)| form written directly in the amplitudes.
    """
    radicand = 12 * invariant_48(a)
    if abs(radicand.imag) <= ATOL and -ATOL < radicand.real < 0:
        radicand = 0j
    return float(4 * abs(np.sqrt(radicand)))


def tau48(psi: StateVector) -> float:
    return tau48_amplitudes(extract_amplitudes(psi))


def tau48_closed(params: FamilyParams) -> float:
    c1, c2 = np.cos(2 * params.theta1), np.cos(2 * params.theta2)
    s1, s2 = np.sin(2 * params.theta1), np.sin(2 * params.theta2)
    return float(0.5 * np.sqrt((1 + c1 * c2) ** 2 + 3 * s1**2 * s2**2))


def tau48_theta(theta: float) -> float:
    theta = check_angle(theta, "theta")
    return float(np.sqrt(np.cos(2 * theta) ** 4 + np.sin(2 * theta) ** 2))
