"""Cross-checks of every numeric identity the package relies on.

Each check reports the largest error it observed and the tolerance it is
held to. Randomized checks draw from a PCG64 generator seeded by the caller.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from wyko_tau import settings
from wyko_tau.bell import (
    bell_closed,
    bell_expectation,
    bell_expectation_local,
    bell_theta,
    build_wyko_operator,
    default_settings,
    tau_from_violation,
)
from wyko_tau.measures import (
    tau48,
    tau48_closed,
    tau48_theta,
    tau_n,
    tau_n_closed,
)
from wyko_tau.quantum.constants import ALGEBRAIC_BOUND, CLASSICAL_BOUND, IMAG_ATOL
from wyko_tau.quantum.oracle.dense import dense_apply
from wyko_tau.quantum.pauli import (
    PauliString,
    PauliSum,
    apply_pauli_string,
    apply_pauli_sum,
    expectation,
)
from wyko_tau.quantum.qstate import (
    CHI,
    FamilyParams,
    inner_product,
    make_family_state,
    make_ghz,
    make_theta_state,
    random_product_state,
    random_state,
)
from wyko_tau.sweep import theta_grid

logger = logging.getLogger(__name__)

GRID_SIZE = 50
THETA_SAMPLES = 1000
RANDOM_STATES = 200
RANDOM_STRINGS = 200
BOUND_SAMPLES = 1000


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_error)) and self.max_error <= self.tolerance

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: max error {self.max_error:.3e}"
            + f" (tolerance {self.tolerance:.0e})"
        )


def _grid():
    thetas = theta_grid(GRID_SIZE)
    return [FamilyParams(t1, t2) for t1 in thetas for t2 in thetas]


def _thetas():
    return theta_grid(THETA_SAMPLES)


def _thetas_with_landmarks():
    # 1001 points put pi/8, pi/4 and 3pi/8 exactly on the grid
    return theta_grid(1001)


def _random_pauli_string(rng, n=4) -> PauliString:
    symbols = tuple(str(s) for s in rng.choice(list("IXYZ"), size=n))
    return PauliString(symbols, rng.normal())


def check_normalization(rng):
    return max(abs(make_family_state(p).norm_squared() - 1) for p in _grid())


def check_theta_state_identity(rng):
    return max(
        float(
            np.max(
                np.abs(
                    make_family_state(FamilyParams(t, t)).amplitudes
                    - make_theta_state(t).amplitudes
                )
            )
        )
        for t in theta_grid(GRID_SIZE)
    )


FAMILY_SIGNS = {
    0b0000: (np.cos, 1, +1),
    0b1111: (np.cos, 1, +1),
    0b0011: (np.sin, 1, -1),
    0b1100: (np.sin, 1, +1),
    0b0101: (np.cos, 2, -1),
    0b1010: (np.cos, 2, +1),
    0b0110: (np.sin, 2, +1),
    0b1001: (np.sin, 2, +1),
}


def check_family_amplitudes(rng):
    # Built independently of make_family_state: (trig, angle index, sign) per ket
    worst = 0.0
    for p in _grid():
        expected = np.zeros(16)
        for index, (trig, which, sign) in FAMILY_SIGNS.items():
            expected[index] = sign * trig(p.theta1 if which == 1 else p.theta2) / 2
        amps = make_family_state(p).amplitudes
        worst = max(worst, float(np.max(np.abs(amps - expected))))
    return worst


def check_inner_product_symmetry(rng):
    errors = []
    for _ in range(RANDOM_STATES):
        a, b = random_state(4, rng), random_state(4, rng)
        errors.append(abs(inner_product(a, b) - inner_product(b, a).conjugate()))
    return max(errors)


def check_kernel_against_dense(rng):
    strings = list(build_wyko_operator(default_settings()))
    strings += [_random_pauli_string(rng) for _ in range(RANDOM_STRINGS)]
    errors = []
    for p in strings:
        psi = random_state(4, rng)
        fast = apply_pauli_string(p, psi).amplitudes
        dense = dense_apply(PauliSum((p,)), psi)
        errors.append(float(np.max(np.abs(fast - dense))))
    return max(errors)


def check_pauli_involution(rng):
    errors = []
    for _ in range(RANDOM_STRINGS):
        p = PauliString(_random_pauli_string(rng).symbols, 1.0)
        psi = random_state(4, rng)
        twice = apply_pauli_string(p, apply_pauli_string(p, psi))
        errors.append(float(np.max(np.abs(twice.amplitudes - psi.amplitudes))))
    return max(errors)


def check_expectation_real(rng):
    op = build_wyko_operator(default_settings())
    errors = []
    for _ in range(RANDOM_STATES):
        psi = random_state(4, rng)
        value = np.vdot(psi.amplitudes, apply_pauli_sum(op, psi).amplitudes)
        errors.append(abs(value.imag))
    return max(errors)


def check_expectation_phase(rng):
    op = build_wyko_operator(default_settings())
    errors = []
    for _ in range(RANDOM_STATES):
        psi = random_state(4, rng)
        phased = psi.with_global_phase(rng.uniform(0, 2 * np.pi))
        errors.append(abs(expectation(op, psi) - expectation(op, phased)))
    return max(errors)


def check_tau4_closed(rng):
    return max(abs(tau_n(make_family_state(p)) - tau_n_closed(p)) for p in _grid())


def check_tau4_diagonal(rng):
    return max(tau_n(make_theta_state(t)) for t in theta_grid(GRID_SIZE))


def check_tau4_phase(rng):
    errors = []
    for _ in range(RANDOM_STATES):
        psi = random_state(4, rng)
        phased = psi.with_global_phase(rng.uniform(0, 2 * np.pi))
        errors.append(abs(tau_n(psi) - tau_n(phased)))
    return max(errors)


def check_tau48_closed(rng):
    return max(abs(tau48(make_family_state(p)) - tau48_closed(p)) for p in _grid())


def check_tau48_theta(rng):
    return max(
        abs(tau48_theta(t) - tau48_closed(FamilyParams(t, t))) for t in _thetas()
    )


def check_measure_ranges(rng):
    worst = 0.0
    for p in _grid():
        for value in (tau_n(make_family_state(p)), tau48_closed(p)):
            worst = max(worst, -value, value - 1)
    return worst


def check_tau48_minimum(rng):
    return max(
        abs(tau48_theta(np.pi / 8) - np.sqrt(3) / 2),
        abs(tau48_theta(3 * np.pi / 8) - np.sqrt(3) / 2),
        abs(tau_from_violation(2 + np.sqrt(2)) - np.sqrt(3) / 2),
    )


def check_tau48_extremes(rng):
    thetas = _thetas_with_landmarks()
    values = np.array([tau48(make_theta_state(t)) for t in thetas])
    interior = values[1:-1]
    is_min = (interior < values[:-2]) & (interior < values[2:])
    is_max = (interior > values[:-2]) & (interior > values[2:])
    minima = thetas[1:-1][is_min]
    maxima = np.concatenate([[thetas[0]], thetas[1:-1][is_max], [thetas[-1]]])
    expected_minima = np.array([np.pi / 8, 3 * np.pi / 8])
    expected_maxima = np.array([0.0, np.pi / 4, np.pi / 2])
    if minima.shape != expected_minima.shape or maxima.shape != expected_maxima.shape:
        return np.inf
    return max(
        float(np.max(np.abs(minima - expected_minima))),
        float(np.max(np.abs(maxima - expected_maxima))),
        abs(values.min() - np.sqrt(3) / 2),
        abs(values.max() - 1.0),
        float(np.max(np.abs(values[np.isin(thetas, maxima)] - 1.0))),
    )


def check_bell_closed(rng):
    s = default_settings()
    return max(
        abs(bell_expectation(make_family_state(p), s) - bell_closed(p))
        for p in _grid()
    )


def check_bell_theta(rng):
    return max(
        abs(bell_theta(t) - bell_closed(FamilyParams(t, t))) for t in _thetas()
    )


def check_tau_from_violation(rng):
    return max(
        abs(tau_from_violation(bell_theta(t)) - tau48_theta(t)) for t in _thetas()
    )


def check_strict_violation(rng):
    # Number of interior thetas at which <B> fails to exceed the classical bound.
    return float(sum(bell_theta(t) <= CLASSICAL_BOUND for t in _thetas()[1:-1]))


def check_chi_violation(rng):
    return abs(bell_expectation(make_family_state(CHI), default_settings()) - 4.0)


def check_ghz_non_violation(rng):
    value = bell_expectation(make_ghz(4), default_settings())
    logger.info(f"<GHZ4|B|GHZ4> = {value:.12f}")
    return max(0.0, abs(value) - CLASSICAL_BOUND)


def check_algebraic_bound(rng):
    s = default_settings()
    return max(
        max(0.0, abs(bell_expectation(random_state(4, rng), s)) - ALGEBRAIC_BOUND)
        for _ in range(BOUND_SAMPLES)
    )


def check_product_bound(rng):
    s = default_settings()
    return max(
        max(
            0.0,
            abs(bell_expectation(random_product_state(4, rng), s)) - CLASSICAL_BOUND,
        )
        for _ in range(BOUND_SAMPLES)
    )


def check_local_evaluation(rng):
    s = default_settings()
    errors = []
    for _ in range(RANDOM_STATES):
        psi = random_state(4, rng)
        errors.append(abs(bell_expectation(psi, s) - bell_expectation_local(psi, s)))
    return max(errors)


CHECKS: list[tuple[str, Callable, float]] = [
    ("family states normalized on 50x50 grid", check_normalization, 1e-12),
    ("theta state equals diagonal family state", check_theta_state_identity, 0.0),
    ("family amplitudes carry the listed signs", check_family_amplitudes, 1e-15),
    ("inner product conjugate symmetry", check_inner_product_symmetry, 1e-12),
    ("matrix-free Pauli kernel vs dense oracle", check_kernel_against_dense, 1e-12),
    ("Pauli string involution", check_pauli_involution, 1e-12),
    ("Bell expectation imaginary residue", check_expectation_real, IMAG_ATOL),
    ("expectation invariant under global phase", check_expectation_phase, 1e-12),
    ("tau4 numeric vs closed form on grid", check_tau4_closed, 1e-10),
    ("tau4 vanishes on theta1 = theta2", check_tau4_diagonal, 1e-12),
    ("tau4 invariant under global phase", check_tau4_phase, 1e-12),
    ("tau48 amplitude form vs closed form on grid", check_tau48_closed, 1e-10),
    ("tau48 one-parameter form vs closed form", check_tau48_theta, 1e-12),
    ("tau4 and tau48 inside [0, 1]", check_measure_ranges, 1e-12),
    ("tau48 minimum sqrt(3)/2 at pi/8 and 3pi/8", check_tau48_minimum, 1e-12),
    ("tau48 extremes on theta1 = theta2", check_tau48_extremes, 1e-12),
    ("Bell numeric vs closed form on grid", check_bell_closed, 1e-10),
    ("Bell one-parameter form vs closed form", check_bell_theta, 1e-12),
    ("tau48 from violation identity", check_tau_from_violation, 1e-10),
    ("strict violation for 0 < theta < pi/2", check_strict_violation, 0.0),
    ("<chi|B|chi> = 4", check_chi_violation, 1e-12),
    ("GHZ4 does not violate |<B>| <= 2", check_ghz_non_violation, 0.0),
    ("|<B>| <= 4 on random states", check_algebraic_bound, 1e-10),
    ("|<B>| <= 2 on random product states", check_product_bound, 1e-9),
    ("local-observable Bell evaluation vs Pauli sum", check_local_evaluation, 1e-12),
]


def run_checks(seed: Optional[int] = None) -> list[CheckResult]:
    seed = settings.DEFAULT_SEED if seed is None else seed
    results = []
    for name, func, tolerance in CHECKS:
        rng = np.random.default_rng(seed)
        result = CheckResult(name, float(func(rng)), tolerance)
        logger.debug(str(result))
        results.append(result)
    return results
