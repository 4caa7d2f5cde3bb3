"""Test the numeric cross-check suite."""

import math

import pytest

from wyko_tau.verify import CHECKS, CheckResult, run_checks


class TestCheckResult:
    @pytest.mark.parametrize(
        "max_error, tolerance, passed",
        [(0.0, 0.0, True), (1e-13, 1e-12, True), (2e-12, 1e-12, False)],
    )
    def test_passed(self, max_error, tolerance, passed):
        assert CheckResult("check", max_error, tolerance).passed is passed

    def test_nan_fails(self):
        assert not CheckResult("check", math.nan, 1.0).passed

    def test_str(self):
        assert str(CheckResult("check", 0.0, 1e-12)).startswith("[PASS] check")
        assert str(CheckResult("check", 1.0, 1e-12)).startswith("[FAIL] check")


class TestRunChecks:
    def test_every_check_passes(self):
        results = run_checks(seed=7)
        assert len(results) == len(CHECKS)
        failed = [str(r) for r in results if not r.passed]
        assert failed == []

    def test_amplitude_and_extreme_checks_registered(self):
        names = [name for name, _, _ in CHECKS]
        assert "family amplitudes carry the listed signs" in names
        assert "tau48 extremes on theta1 = theta2" in names

    def test_other_seed(self):
        assert all(r.passed for r in run_checks(seed=12345))
