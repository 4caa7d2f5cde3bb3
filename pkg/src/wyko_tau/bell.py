"""WYKO four-qubit Bell operator and its expectation values.

B = A1 B1 C1 D1 + B1 C2 D2 + B2 C1 D2 - A1 B2 C2 D1, with party A on qubit 1,
B on qubit 2, C on qubit 3 and D on qubit 4. Local hidden variable models
obey |<B>| <= 2.
"""

import logging
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Sequence

import numpy as np

from wyko_tau.errors import DomainError
from wyko_tau.measures import tau48, tau48_closed, tau_n, tau_n_closed
from wyko_tau.quantum.constants import ALGEBRAIC_BOUND, CLASSICAL_BOUND
from wyko_tau.quantum.pauli import (
    BlochObservable,
    PauliSum,
    apply_local_operators,
    expectation,
    local_product,
)
from wyko_tau.quantum.qstate import (
    FamilyParams,
    StateVector,
    check_angle,
    make_family_state,
)

logger = logging.getLogger(__name__)

SIGMA_X = BlochObservable(1.0, 0.0, 0.0)
SIGMA_Y = BlochObservable(0.0, 1.0, 0.0)
SIGMA_Z = BlochObservable(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class MeasurementSettings:
    """Two observables per party. ``a2`` is carried but unused by B."""

    a1: BlochObservable
    a2: BlochObservable
    b1: BlochObservable
    b2: BlochObservable
    c1: BlochObservable
    c2: BlochObservable
    d1: BlochObservable
    d2: BlochObservable

    def __post_init__(self):
        for f in fields(self):
            if not isinstance(getattr(self, f.name), BlochObservable):
                err_msg = f"Setting {f.name} must be a BlochObservable"
                logger.error(err_msg)
                raise ValueError(err_msg)

    def observables(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    @classmethod
    def names(cls) -> tuple:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_angles(cls, angles: Sequence[float]) -> "MeasurementSettings":
        """Build from 16 angles: (polar, azimuth) for a1, a2, b1, ..., d2."""
        angles = np.asarray(angles, dtype=float)
        if angles.shape != (16,):
            err_msg = f"Expected 16 angles, got shape {angles.shape}"
            logger.error(err_msg)
            raise ValueError(err_msg)
        return cls(
            *(BlochObservable.from_angles(p, a) for p, a in angles.reshape(8, 2))
        )

    def to_angles(self) -> np.ndarray:
        return np.array([obs.angles() for obs in self.observables()]).ravel()


@dataclass(frozen=True)
class ViolationRecord:
    theta1: float
    theta2: float
    bell_value: float
    tau4: float
    tau48: float

    def __post_init__(self):
        if abs(self.bell_value) > ALGEBRAIC_BOUND + 1e-9:
            err_msg = f"|<B>| = {abs(self.bell_value)} exceeds the algebraic bound"
            logger.error(err_msg)
            raise ValueError(err_msg)

    @property
    def violates(self) -> bool:
        return abs(self.bell_value) > CLASSICAL_BOUND


def default_settings() -> MeasurementSettings:
    """Axis-aligned settings: A1=X, B1=Z, C1=Z, D1=X, B2=C2=D2=Y (A2=X, unused)."""
    return MeasurementSettings(
        a1=SIGMA_X,
        a2=SIGMA_X,
        b1=SIGMA_Z,
        b2=SIGMA_Y,
        c1=SIGMA_Z,
        c2=SIGMA_Y,
        d1=SIGMA_X,
        d2=SIGMA_Y,
    )


@lru_cache(maxsize=256)
def build_wyko_operator(settings: MeasurementSettings) -> PauliSum:
    """Expand B for ``settings`` into a Pauli sum."""
    s = settings
    return (
        local_product([s.a1, s.b1, s.c1, s.d1])
        + local_product([None, s.b1, s.c2, s.d2])
        + local_product([None, s.b2, s.c1, s.d2])
        + local_product([s.a1, s.b2, s.c2, s.d1], coefficient=-1.0)
    )


def _check_four_qubits(psi: StateVector):
    if psi.n_qubits != 4:
        err_msg = f"The WYKO operator acts on 4 qubits, state has {psi.n_qubits}"
        logger.error(err_msg)
        raise ValueError(err_msg)


def bell_expectation(psi: StateVector, settings: MeasurementSettings) -> float:
    _check_four_qubits(psi)
    return expectation(build_wyko_operator(settings), psi)


def bell_expectation_local(psi: StateVector, settings: MeasurementSettings) -> float:
    """Same value as ``bell_expectation``, contracting 2x2 observables per qubit.

    No Pauli expansion; this is the evaluation used inside the settings search.
    """
    _check_four_qubits(psi)
    return wyko_value(psi, [obs.matrix for obs in settings.observables()])


def wyko_value(psi: StateVector, matrices: Sequence[np.ndarray]) -> float:
    """<psi|B|psi> for 2x2 observables given in settings order a1, a2, ..., d2."""
    a1, _, b1, b2, c1, c2, d1, d2 = matrices
    products = (
        (1.0, [a1, b1, c1, d1]),
        (1.0, [None, b1, c2, d2]),
        (1.0, [None, b2, c1, d2]),
        (-1.0, [a1, b2, c2, d1]),
    )
    value = 0j
    for sign, factors in products:
        applied = apply_local_operators(factors, psi)
        value += sign * np.vdot(psi.amplitudes, applied.amplitudes)
    return float(value.real)


def bell_closed(params: FamilyParams) -> float:
    t1, t2 = params.theta1, params.theta2
    return float((1 + np.cos(t1 - t2)) * (1 + np.sin(t1 + t2)))


def bell_theta(theta: float) -> float:
    theta = check_angle(theta, "theta")
    return float(2 * (1 + np.sin(2 * theta)))


def tau_from_violation(bell_value: float) -> float:
    """tau_(4,8)[psi(theta)] recovered from <psi(theta)|B|psi(theta)>.

    Holds for the one-parameter family psi(theta) only, whose default-settings
    expectation spans [2, 4]; it is not a conversion for arbitrary states.
    """
    bell_value = float(bell_value)
    if not CLASSICAL_BOUND <= bell_value <= ALGEBRAIC_BOUND:
        err_msg = (
            f"<B> = {bell_value} outside [{CLASSICAL_BOUND}, {ALGEBRAIC_BOUND}],"
            + " where the family relation is established"
        )
        logger.error(err_msg)
        raise DomainError(err_msg)
    x = 1 - bell_value / 2
    return float(np.sqrt(1 + x**4 - x**2))


def quantum_violation(bell_value: float) -> float:
    """Amount by which |<B>| exceeds the classical bound (0 if it does not)."""
    return max(0.0, abs(bell_value) - CLASSICAL_BOUND)


def record_violation(params: FamilyParams) -> ViolationRecord:
    psi = make_family_state(params)
    return ViolationRecord(
        theta1=params.theta1,
        theta2=params.theta2,
        bell_value=bell_expectation(psi, default_settings()),
        tau4=tau_n(psi),
        tau48=tau48(psi),
    )


def closed_violation_record(params: FamilyParams) -> ViolationRecord:
    return ViolationRecord(
        theta1=params.theta1,
        theta2=params.theta2,
        bell_value=bell_closed(params),
        tau4=tau_n_closed(params),
        tau48=tau48_closed(params),
    )
