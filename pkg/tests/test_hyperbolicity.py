"""Tests for the autonomous Jacobian and its spectrum."""

import numpy as np
import pytest

from setlerkit.analysis import jacobian_autonomous, numerical_divergence, numerical_jacobian
from setlerkit.dynamics import SetlerField
from setlerkit.interfaces import SetlerParams, SphericalState


class TestJacobianAutonomous:

    @pytest.mark.parametrize("lam", np.linspace(-2.0, 3.0, 10))
    def test_origin_spectrum_is_exact(self, lam):
        report = jacobian_autonomous(SphericalState(0.0, 0.0, 0.0), float(lam))
        np.testing.assert_array_equal(report.matrix, np.diag([lam, lam, 0.0]))
        assert sorted(report.eigenvalues.tolist()) == sorted([lam, lam, 0.0])

    def test_zero_lambda(self):
        report = jacobian_autonomous(SphericalState(0.3, 0.4, 1.0), 0.0)
        np.testing.assert_array_equal(report.matrix, np.zeros((3, 3)))
        np.testing.assert_array_equal(report.eigenvalues, np.zeros(3))

    def test_matches_finite_differences(self):
        s = SphericalState(0.3, 0.4, 1.0)
        analytic = jacobian_autonomous(s, 1.0).matrix
        numeric = numerical_jacobian(SetlerField(SetlerParams(lam=1.0)), s.as_array())
        np.testing.assert_allclose(analytic, numeric, rtol=0, atol=1e-6)

    def test_random_states_match_finite_differences(self, rng):
        for _ in range(100):
            values = rng.uniform(-3.0, 3.0, size=3)
            lam = float(rng.uniform(-2.0, 2.0))
            analytic = jacobian_autonomous(SphericalState.from_array(values), lam).matrix
            numeric = numerical_jacobian(SetlerField(SetlerParams(lam=lam)), values)
            np.testing.assert_allclose(analytic, numeric, rtol=0, atol=1e-6)

    def test_forcing_is_ignored(self):
        # the forcing terms do not depend on the state
        s = SphericalState(0.7, -0.2, 2.0)
        forced = SetlerField(SetlerParams(lam=1.5, beta=2.0, gamma=1.0, delta_f=3.0, omega=0.7))
        numeric = numerical_jacobian(forced, s.as_array(), tau=1.3)
        np.testing.assert_allclose(jacobian_autonomous(s, 1.5).matrix, numeric, atol=1e-6)

    def test_characteristic_residual(self, rng):
        for _ in range(20):
            s = SphericalState.from_array(rng.uniform(-3.0, 3.0, size=3))
            report = jacobian_autonomous(s, float(rng.uniform(0.1, 2.0)))
            assert report.characteristic_residual() < 1e-10

    def test_to_dict_splits_complex_parts(self):
        out = jacobian_autonomous(SphericalState(0.3, 0.4, 1.0), 1.0).to_dict()
        assert len(out["matrix"]) == 3
        assert set(out["eigenvalues"][0]) == {"real", "imag"}

    def test_divergence_is_trace(self):
        s = SphericalState(0.3, 0.4, 1.0)
        field = SetlerField(SetlerParams(lam=1.0))
        expected = float(np.trace(jacobian_autonomous(s, 1.0).matrix))
        assert numerical_divergence(field, s.as_array()) == pytest.approx(expected, abs=1e-6)
