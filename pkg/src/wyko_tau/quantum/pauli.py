"""Pauli strings, Pauli sums and Bloch-vector observables.

Operators act on ``StateVector`` amplitudes without ever building a
2**n x 2**n matrix. Qubit ``k`` (1-based, leftmost in the ket) is bit
``n - k`` of the array index.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from wyko_tau.errors import ConsistencyError
from wyko_tau.quantum.constants import (
    BLOCH_ATOL,
    IMAG_ATOL,
    PAULI_MATRICES,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
)
from wyko_tau.quantum.qstate import StateVector

logger = logging.getLogger(__name__)


class PauliSymbol(str, enum.Enum):
    I = "I"  # noqa: E741
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def matrix(self) -> np.ndarray:
        return PAULI_MATRICES[self.value]


@dataclass(frozen=True)
class PauliString:
    """Real coefficient times a tensor product of one Pauli symbol per qubit."""

    symbols: tuple
    coefficient: float = 1.0

    def __post_init__(self):
        try:
            symbols = tuple(PauliSymbol(s) for s in self.symbols)
        except ValueError as error:
            err_msg = f"Invalid Pauli symbols {self.symbols!r}: {error}"
            logger.error(err_msg)
            raise ValueError(err_msg) from error
        if not symbols:
            err_msg = "A Pauli string needs at least one symbol."
            logger.error(err_msg)
            raise ValueError(err_msg)
        if isinstance(self.coefficient, complex) or np.iscomplexobj(self.coefficient):
            err_msg = f"Pauli string coefficient must be real, got {self.coefficient!r}"
            logger.error(err_msg)
            raise ValueError(err_msg)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @classmethod
    def from_label(cls, label: str, coefficient: float = 1.0) -> "PauliString":
        return cls(tuple(label), coefficient)

    @property
    def label(self) -> str:
        return "".join(s.value for s in self.symbols)

    @property
    def n_qubits(self) -> int:
        return len(self.symbols)

    def __str__(self):
        return f"{self.coefficient:+g}*{self.label}"


@dataclass(frozen=True)
class PauliSum:
    """Sum of Pauli strings of equal length. Zero-coefficient terms are dropped."""

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(t for t in self.terms if t.coefficient != 0.0)
        lengths = {t.n_qubits for t in terms}
        if len(lengths) > 1:
            err_msg = f"Pauli sum mixes string lengths {sorted(lengths)}"
            logger.error(err_msg)
            raise ValueError(err_msg)
        object.__setattr__(self, "terms", terms)

    @property
    def n_qubits(self) -> Optional[int]:
        return self.terms[0].n_qubits if self.terms else None

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[PauliString]:
        return iter(self.terms)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        return PauliSum(self.terms + other.terms)

    def __str__(self):
        return " ".join(str(t) for t in self.terms) or "0"


@dataclass(frozen=True)
class BlochObservable:
    """The single-qubit observable n.sigma for a unit Bloch vector n."""

    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        norm_sq = self.nx**2 + self.ny**2 + self.nz**2
        if not np.isfinite(norm_sq) or abs(norm_sq - 1.0) > BLOCH_ATOL:
            err_msg = (
                f"Bloch vector ({self.nx}, {self.ny}, {self.nz}) is not unit norm"
                + f" (|n|^2 = {norm_sq})"
            )
            logger.error(err_msg)
            raise ValueError(err_msg)
        for name in ("nx", "ny", "nz"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> "BlochObservable":
        return cls(
            np.sin(polar) * np.cos(azimuth),
            np.sin(polar) * np.sin(azimuth),
            np.cos(polar),
        )

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz])

    @property
    def matrix(self) -> np.ndarray:
        return self.nx * PAULI_X + self.ny * PAULI_Y + self.nz * PAULI_Z

    def angles(self) -> tuple[float, float]:
        """(polar, azimuth) with polar in [0, pi] and azimuth in [0, 2 pi)."""
        polar = float(np.arccos(np.clip(self.nz, -1.0, 1.0)))
        azimuth = float(np.mod(np.arctan2(self.ny, self.nx), 2 * np.pi))
        return polar, azimuth

    def __str__(self):
        return f"({self.nx:+.6f}, {self.ny:+.6f}, {self.nz:+.6f})"


def _check_length(n_ops: int, psi: StateVector):
    if n_ops != psi.n_qubits:
        err_msg = f"Operator acts on {n_ops} qubits but state has {psi.n_qubits}"
        logger.error(err_msg)
        raise ValueError(err_msg)


def _apply_string(p: PauliString, amps: np.ndarray) -> np.ndarray:
    n = p.n_qubits
    index = np.arange(amps.size)
    flip_mask = 0
    phase = np.full(amps.size, p.coefficient, dtype=np.complex128)
    for k, symbol in enumerate(p.symbols):
        if symbol is PauliSymbol.I:
            continue
        bit_index = n - 1 - k
        sign = 1 - 2 * ((index >> bit_index) & 1)  # (-1)**bit
        if symbol is PauliSymbol.Z:
            phase *= sign
        else:
            flip_mask |= 1 << bit_index
            if symbol is PauliSymbol.Y:
                # Y|0> = i|1>, Y|1> = -i|0>
                phase *= 1j * sign
    out = np.empty_like(amps)
    out[index ^ flip_mask] = phase * amps
    return out


def apply_pauli_string(p: PauliString, psi: StateVector) -> StateVector:
    """coefficient * (tensor product of sigmas) |psi>, computed matrix-free."""
    _check_length(p.n_qubits, psi)
    return StateVector(_apply_string(p, psi.amplitudes), check_norm=False)


def apply_pauli_sum(op: PauliSum, psi: StateVector) -> StateVector:
    out = np.zeros(psi.dim, dtype=np.complex128)
    for term in op:
        _check_length(term.n_qubits, psi)
        out += _apply_string(term, psi.amplitudes)
    return StateVector(out, check_norm=False)


def expectation(op: PauliSum, psi: StateVector) -> float:
    """Re <psi|op|psi>; the imaginary residue must stay below 1e-10."""
    value = complex(np.vdot(psi.amplitudes, apply_pauli_sum(op, psi).amplitudes))
    if abs(value.imag) > IMAG_ATOL:
        err_msg = f"Expectation value {value} has a non-negligible imaginary part"
        logger.error(err_msg)
        raise ConsistencyError(err_msg)
    return value.real


def bloch_to_pauli(obs: BlochObservable, qubit_index: int, n_qubits: int) -> PauliSum:
    """nx X + ny Y + nz Z on ``qubit_index`` (1-based), identity elsewhere."""
    if not 1 <= qubit_index <= n_qubits:
        err_msg = f"Qubit index {qubit_index} outside 1..{n_qubits}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    return local_product(
        [obs if k == qubit_index else None for k in range(1, n_qubits + 1)]
    )


def local_product(
    observables: Sequence[Optional[BlochObservable]], coefficient: float = 1.0
) -> PauliSum:
    """Expand coefficient * (x)_k obs_k into a Pauli sum; ``None`` is identity."""
    factors = []
    for obs in observables:
        if obs is None:
            factors.append(((PauliSymbol.I, 1.0),))
        else:
            factors.append(
                (
                    (PauliSymbol.X, obs.nx),
                    (PauliSymbol.Y, obs.ny),
                    (PauliSymbol.Z, obs.nz),
                )
            )
    terms = []
    for combo in itertools.product(*factors):
        coeff = coefficient * float(np.prod([c for _, c in combo]))
        terms.append(PauliString(tuple(s for s, _ in combo), coeff))
    return PauliSum(tuple(terms))


def apply_local_operators(
    matrices: Sequence[Optional[np.ndarray]], psi: StateVector
) -> StateVector:
    """Apply one 2x2 matrix per qubit (``None`` is identity) by tensor contraction."""
    _check_length(len(matrices), psi)
    tensor = psi.amplitudes.reshape((2,) * psi.n_qubits)
    for k, matrix in enumerate(matrices):
        if matrix is None:
            continue
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [k])), 0, k)
    return StateVector(tensor.reshape(-1), check_norm=False)
