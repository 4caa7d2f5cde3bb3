"""Test the WYKO operator, its expectation values and the violation relation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wyko_tau.bell import (
    SIGMA_Z,
    MeasurementSettings,
    ViolationRecord,
    bell_closed,
    bell_expectation,
    bell_expectation_local,
    bell_theta,
    build_wyko_operator,
    closed_violation_record,
    default_settings,
    quantum_violation,
    record_violation,
    tau_from_violation,
)
from wyko_tau.errors import DomainError, RangeError
from wyko_tau.measures import tau48_theta
from wyko_tau.quantum.oracle.dense import pauli_sum_matrix
from wyko_tau.quantum.qstate import (
    CHI,
    FamilyParams,
    basis_state,
    make_family_state,
    make_ghz,
    make_theta_state,
    random_product_state,
    random_state,
)

angles = st.floats(min_value=0.0, max_value=np.pi / 2)
interior = st.floats(min_value=1e-6, max_value=np.pi / 2 - 1e-6)


def random_settings(rng) -> MeasurementSettings:
    polar = np.arccos(rng.uniform(-1, 1, size=8))
    azimuth = rng.uniform(0, 2 * np.pi, size=8)
    return MeasurementSettings.from_angles(np.column_stack([polar, azimuth]).ravel())


class TestWykoOperator:
    # Shared default settings and operator
    setup_complete = False

    @pytest.fixture(autouse=True)
    def setup_operator(self):
        """Build B for the default settings"""
        if self.setup_complete:
            return
        self.settings = default_settings()
        self.op = build_wyko_operator(self.settings)
        self.setup_complete = True

    def test_default_settings(self):
        s = self.settings
        assert (s.a1.nx, s.b1.nz, s.c1.nz, s.d1.nx) == (1.0, 1.0, 1.0, 1.0)
        assert (s.b2.ny, s.c2.ny, s.d2.ny) == (1.0, 1.0, 1.0)
        assert s.names() == ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")

    def test_default_operator_terms(self):
        terms = {t.label: t.coefficient for t in self.op}
        assert terms == {"XZZX": 1.0, "IZYY": 1.0, "IYZY": 1.0, "XYYX": -1.0}

    def test_operator_hermitian_with_norm_four(self):
        matrix = pauli_sum_matrix(self.op, 4)
        assert np.allclose(matrix, matrix.conj().T)
        eigenvalues = np.linalg.eigvalsh(matrix)
        assert eigenvalues.max() == pytest.approx(4.0, abs=1e-10)
        assert eigenvalues.min() >= -4.0 - 1e-10

    def test_chi_saturates_algebraic_bound(self):
        assert bell_expectation(make_family_state(CHI), self.settings) == pytest.approx(
            4.0, abs=1e-12
        )

    @pytest.mark.parametrize(
        "theta, expected",
        [(0.0, 2.0), (np.pi / 8, 2 + np.sqrt(2)), (np.pi / 4, 4.0), (np.pi / 2, 2.0)],
    )
    def test_theta_values(self, theta, expected):
        value = bell_expectation(make_theta_state(theta), self.settings)
        assert value == pytest.approx(expected, abs=1e-12)
        assert bell_theta(theta) == pytest.approx(expected, abs=1e-12)

    def test_ghz_does_not_violate(self):
        value = bell_expectation(make_ghz(4), self.settings)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert quantum_violation(value) == 0.0

    def test_all_z_on_zero_ket(self):
        z = MeasurementSettings(*([SIGMA_Z] * 8))
        assert bell_expectation(basis_state("0000"), z) == pytest.approx(2.0)

    def test_algebraic_bound_on_random_states(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            value = bell_expectation(random_state(4, rng), self.settings)
            assert abs(value) <= 4 + 1e-10

    def test_classical_bound_on_product_states(self):
        rng = np.random.default_rng(32)
        for _ in range(100):
            s = random_settings(rng)
            psi = random_product_state(4, rng)
            assert abs(bell_expectation_local(psi, s)) <= 2 + 1e-9
            assert abs(bell_expectation(psi, self.settings)) <= 2 + 1e-9

    def test_local_evaluation_matches_pauli_sum(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            s = random_settings(rng)
            psi = random_state(4, rng)
            assert bell_expectation_local(psi, s) == pytest.approx(
                bell_expectation(psi, s), abs=1e-12
            )

    def test_wrong_qubit_count(self):
        with pytest.raises(ValueError):
            bell_expectation(make_ghz(3), self.settings)
        with pytest.raises(ValueError):
            bell_expectation_local(make_ghz(5), self.settings)


class TestMeasurementSettings:
    def test_angles_round_trip(self):
        s = random_settings(np.random.default_rng(34))
        rebuilt = MeasurementSettings.from_angles(s.to_angles())
        for a, b in zip(s.observables(), rebuilt.observables()):
            assert np.allclose(a.vector, b.vector, atol=1e-12)

    def test_wrong_angle_count(self):
        with pytest.raises(ValueError):
            MeasurementSettings.from_angles(np.zeros(15))

    def test_non_observable_rejected(self):
        with pytest.raises(ValueError):
            MeasurementSettings(*([SIGMA_Z] * 7), "Z")

    def test_hashable(self):
        assert hash(default_settings()) == hash(default_settings())


class TestViolation:
    @settings(max_examples=50, deadline=None)
    @given(angles, angles)
    def test_matches_closed_form(self, theta1, theta2):
        params = FamilyParams(theta1, theta2)
        numeric = bell_expectation(make_family_state(params), default_settings())
        assert abs(numeric - bell_closed(params)) <= 1e-10

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_theta_form(self, theta):
        assert abs(bell_theta(theta) - bell_closed(FamilyParams(theta, theta))) <= 1e-12

    @settings(max_examples=100, deadline=None)
    @given(interior)
    def test_strict_violation_inside_interval(self, theta):
        assert bell_theta(theta) > 2.0

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_tau_from_violation(self, theta):
        assert abs(tau_from_violation(bell_theta(theta)) - tau48_theta(theta)) <= 1e-10

    @pytest.mark.parametrize(
        "value, expected", [(2.0, 1.0), (4.0, 1.0), (2 + np.sqrt(2), np.sqrt(3) / 2)]
    )
    def test_tau_from_violation_values(self, value, expected):
        assert tau_from_violation(value) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("value", [1.999, 4.001, -3.0])
    def test_tau_from_violation_domain(self, value):
        with pytest.raises(DomainError):
            tau_from_violation(value)

    @pytest.mark.parametrize("theta", [-1e-13, np.pi / 2 + 1e-13])
    def test_tolerance_band_stays_in_violation_domain(self, theta):
        value = bell_theta(theta)
        assert value >= 2.0
        assert tau_from_violation(value) == pytest.approx(1.0, abs=1e-12)

    def test_theta_range(self):
        with pytest.raises(RangeError):
            bell_theta(-0.5)

    def test_quantum_violation(self):
        assert quantum_violation(4.0) == 2.0
        assert quantum_violation(-3.0) == 1.0
        assert quantum_violation(1.0) == 0.0

    def test_records(self):
        record = record_violation(CHI)
        closed = closed_violation_record(CHI)
        assert record.violates
        assert record.bell_value == pytest.approx(closed.bell_value, abs=1e-12)
        assert record.tau48 == pytest.approx(closed.tau48, abs=1e-10)
        assert record.tau4 == pytest.approx(0.0, abs=1e-12)
        assert not closed_violation_record(FamilyParams(0.0, 0.0)).violates

    def test_record_beyond_algebraic_bound(self):
        with pytest.raises(ValueError):
            ViolationRecord(0.0, 0.0, bell_value=4.5, tau4=0.0, tau48=1.0)
