"""Dense pure states and constructors for the four-qubit family.

Basis convention: the ket |i1 i2 ... in> is stored at array index
i1 * 2**(n-1) + ... + in, so qubit 1 is the most significant bit and ket
labels read as binary numbers.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from wyko_tau.errors import RangeError
from wyko_tau.quantum.constants import ATOL, THETA_MAX, THETA_MIN

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A pure state of ``n_qubits`` qubits held as 2**n complex amplitudes.

    States are normalized to within 1e-12 on construction. Operator
    applications produce unnormalized vectors, which are built with
    ``check_norm=False``.
    """

    amplitudes: np.ndarray
    check_norm: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        dim = amps.size
        if dim < 2 or dim & (dim - 1):
            err_msg = f"State length {dim} is not a power of two >= 2."
            logger.error(err_msg)
            raise ValueError(err_msg)
        if self.check_norm:
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1.0) > ATOL:
                err_msg = f"State is not normalized: sum |a|^2 = {norm!r}."
                logger.error(err_msg)
                raise ValueError(err_msg)
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def conjugate(self) -> "StateVector":
        return StateVector(self.amplitudes.conj(), check_norm=self.check_norm)

    def with_global_phase(self, phi: float) -> "StateVector":
        return StateVector(
            np.exp(1j * phi) * self.amplitudes, check_norm=self.check_norm
        )

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class FamilyParams:
    """Angles (radians) selecting a member of the family |psi(theta1, theta2)>."""

    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "theta1", check_angle(self.theta1, "theta1"))
        object.__setattr__(self, "theta2", check_angle(self.theta2, "theta2"))

    @classmethod
    def from_degrees(cls, theta1: float, theta2: float) -> "FamilyParams":
        return cls(float(np.deg2rad(theta1)), float(np.deg2rad(theta2)))

    @classmethod
    def diagonal(cls, theta: float) -> "FamilyParams":
        theta = check_angle(theta, "theta")
        return cls(theta, theta)

    @property
    def is_diagonal(self) -> bool:
        return self.theta1 == self.theta2


def check_angle(value: float, name: str = "theta") -> float:
    """Return ``value`` as a float if it lies in [0, pi/2] up to 1e-12.

    Values inside the tolerance band are clamped onto the interval.
    """
    value = float(value)
    if not (THETA_MIN - ATOL <= value <= THETA_MAX + ATOL):
        err_msg = (
            f"{name}={value!r} rad outside the allowed range "
            + f"[{THETA_MIN}, {THETA_MAX}]"
        )
        logger.error(err_msg)
        raise RangeError(err_msg)
    return float(min(max(value, THETA_MIN), THETA_MAX))


CHI = FamilyParams(np.pi / 4, np.pi / 4)


def make_family_state(params: FamilyParams) -> StateVector:
    """Build |psi(theta1, theta2)> with its eight (or fewer) nonzero amplitudes."""
    c1, s1 = np.cos(params.theta1) / 2, np.sin(params.theta1) / 2
    c2, s2 = np.cos(params.theta2) / 2, np.sin(params.theta2) / 2
    amps = np.zeros(16, dtype=np.complex128)
    amps[0b0000] = c1
    amps[0b1111] = c1
    amps[0b0011] = -s1
    amps[0b1100] = s1
    amps[0b0101] = -c2
    amps[0b1010] = c2
    amps[0b0110] = s2
    amps[0b1001] = s2
    logger.debug(
        f"Family state for theta1={params.theta1}, theta2={params.theta2} rad"
    )
    return StateVector(amps)


def make_theta_state(theta: float) -> StateVector:
    """Build the one-parameter member |psi(theta)> = |psi(theta, theta)>."""
    return make_family_state(FamilyParams.diagonal(theta))


def make_ghz(n: int) -> StateVector:
    """Build (|0...0> + |1...1>) / sqrt(2) on ``n`` qubits."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        err_msg = f"GHZ state needs an integer n >= 2, got {n!r}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(amps)


def basis_state(bits: str) -> StateVector:
    """Computational basis state from a ket label such as ``"0000"``."""
    if len(bits) < 1 or set(bits) - {"0", "1"}:
        err_msg = f"Ket label must be a non-empty string of 0/1, got {bits!r}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return StateVector(amps)


def random_state(n: int, rng: Optional[np.random.Generator] = None) -> StateVector:
    """Haar-random pure state on ``n`` qubits (normalized complex Gaussian)."""
    rng = np.random.default_rng() if rng is None else rng
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(amps / np.linalg.norm(amps))


def random_product_state(
    n: int, rng: Optional[np.random.Generator] = None
) -> StateVector:
    """Tensor product of ``n`` independent random single-qubit pure states."""
    rng = np.random.default_rng() if rng is None else rng
    amps = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        qubit = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps = np.kron(amps, qubit / np.linalg.norm(qubit))
    # Rounding of the Kronecker products stays well inside 1e-12.
    return StateVector(amps / np.linalg.norm(amps))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugating the amplitudes of ``a``."""
    if a.n_qubits != b.n_qubits:
        err_msg = f"Dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits"
        logger.error(err_msg)
        raise ValueError(err_msg)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def ket_label(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def nonzero_amplitudes(
    psi: StateVector, atol: float = ATOL
) -> Sequence[tuple[str, complex]]:
    """(ket label, amplitude) pairs for every amplitude larger than ``atol``."""
    return [
        (ket_label(i, psi.n_qubits), complex(a))
        for i, a in enumerate(psi.amplitudes)
        if abs(a) > atol
    ]
