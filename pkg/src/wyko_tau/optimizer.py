"""Derivative-free search over local measurement settings.

Each of the eight Bloch vectors is parameterized by (polar, azimuth), so
iterates stay exactly on the unit sphere. A restart runs a coordinate search
with a halving step size; restarts draw their start points from
``numpy.random.SeedSequence(seed).spawn(restarts)`` children fed to PCG64
generators, so restart ``k`` starts from the same point whatever the total
number of restarts.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from wyko_tau import settings
from wyko_tau.bell import MeasurementSettings, bell_expectation_local, wyko_value
from wyko_tau.quantum.qstate import StateVector

logger = logging.getLogger(__name__)

N_ANGLES = 16
INITIAL_STEP = np.pi / 4  # rad
MIN_STEP = 1e-7  # rad


@dataclass(frozen=True)
class OptimizationResult:
    best_settings: MeasurementSettings
    best_value: float
    restarts_used: int
    evaluations: int
    restart_values: tuple = ()


def canonicalize_angles(angles: np.ndarray) -> np.ndarray:
    """Map (polar, azimuth) pairs to polar in [0, pi], azimuth in [0, 2 pi)."""
    pairs = np.asarray(angles, dtype=float).reshape(-1, 2).copy()
    polar = np.mod(pairs[:, 0], 2 * np.pi)
    flipped = polar > np.pi
    pairs[:, 0] = np.where(flipped, 2 * np.pi - polar, polar)
    azimuth = np.where(flipped, pairs[:, 1] + np.pi, pairs[:, 1])
    azimuth = np.mod(azimuth, 2 * np.pi)
    # mod can return 2 pi itself for tiny negative inputs
    pairs[:, 1] = np.where(azimuth >= 2 * np.pi, 0.0, azimuth)
    return pairs.ravel()


def _observable_matrices(angles: np.ndarray) -> np.ndarray:
    polar, azimuth = angles[0::2], angles[1::2]
    c = np.cos(polar)
    s = np.sin(polar) * np.exp(1j * azimuth)
    matrices = np.empty((8, 2, 2), dtype=np.complex128)
    matrices[:, 0, 0] = c
    matrices[:, 0, 1] = s.conj()
    matrices[:, 1, 0] = s
    matrices[:, 1, 1] = -c
    return matrices


def _random_start(rng: np.random.Generator) -> np.ndarray:
    # Uniform on the sphere: cos(polar) uniform in [-1, 1].
    polar = np.arccos(rng.uniform(-1.0, 1.0, size=8))
    azimuth = rng.uniform(0.0, 2 * np.pi, size=8)
    return np.column_stack([polar, azimuth]).ravel()


def _coordinate_search(
    psi: StateVector, start: np.ndarray, max_evaluations: int
) -> tuple[np.ndarray, int]:
    def objective(x):
        return abs(wyko_value(psi, _observable_matrices(x)))

    x = start.copy()
    best = objective(x)
    evaluations = 1
    step = INITIAL_STEP
    while step >= MIN_STEP and evaluations < max_evaluations:
        improved = False
        for i in range(N_ANGLES):
            for direction in (1.0, -1.0):
                if evaluations >= max_evaluations:
                    break
                trial = x.copy()
                trial[i] += direction * step
                value = objective(trial)
                evaluations += 1
                if value > best:
                    x, best = trial, value
                    improved = True
                    break
        if not improved:
            step /= 2
    if evaluations >= max_evaluations:
        logger.warning(
            f"Coordinate search hit the evaluation cap ({max_evaluations})"
            + f" at step {step:.3e}"
        )
    return x, evaluations


def _run_restart(
    psi: StateVector, seed_seq: np.random.SeedSequence, max_evaluations: int
) -> tuple[MeasurementSettings, float, int]:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    x, evaluations = _coordinate_search(psi, _random_start(rng), max_evaluations)
    x = canonicalize_angles(x)
    best_settings = MeasurementSettings.from_angles(x)
    value = bell_expectation_local(psi, best_settings)
    if value < 0:
        # Every term of B holds exactly one D observable, so flipping d1 and
        # d2 negates <B>.
        x = x.copy()
        x[12], x[14] = np.pi - x[12], np.pi - x[14]
        x[13] += np.pi
        x[15] += np.pi
        x = canonicalize_angles(x)
        best_settings = MeasurementSettings.from_angles(x)
        value = bell_expectation_local(psi, best_settings)
    return best_settings, value, evaluations


def optimize_settings(
    psi: StateVector,
    restarts: int,
    seed: int,
    max_evaluations: Optional[int] = None,
    workers: Optional[int] = None,
) -> OptimizationResult:
    """Maximize |<B>| over measurement settings for a four-qubit state.

    The returned settings are oriented so that <B> itself equals
    ``best_value``. Ties between restarts go to the lowest restart index.
    """
    if psi.n_qubits != 4:
        err_msg = f"Settings search needs a 4-qubit state, got {psi.n_qubits}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    if restarts < 1:
        err_msg = f"Number of restarts must be at least 1, got {restarts}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    max_evaluations = max_evaluations or settings.MAX_EVALUATIONS
    workers = workers or settings.WORKERS
    seed_seqs = np.random.SeedSequence(seed).spawn(restarts)
    logger.debug(
        f"Optimizing settings: restarts={restarts}, seed={seed}, workers={workers}"
    )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda s: _run_restart(psi, s, max_evaluations), seed_seqs)
            )
    else:
        results = [_run_restart(psi, s, max_evaluations) for s in seed_seqs]

    best_index = 0
    for k, (_, value, _) in enumerate(results):
        logger.debug(f"Restart {k}: <B> = {value:.12f}")
        if value > results[best_index][1]:
            best_index = k
    best_settings, best_value, _ = results[best_index]
    return OptimizationResult(
        best_settings=best_settings,
        best_value=best_value,
        restarts_used=restarts,
        evaluations=sum(r[2] for r in results),
        restart_values=tuple(r[1] for r in results),
    )
