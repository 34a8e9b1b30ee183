"""Tests for the dual-reported F-functional evaluations."""

import math

import numpy as np
import pytest

from setlerkit.entropy import (
    EntropySpec,
    GaussianProfile,
    QuadratureSettings,
    f_functional_gaussian,
    f_functional_perturbed,
    f_functional_quadratic,
    grid_integral_3d,
    monte_carlo,
    radial_grid_integral,
)
from setlerkit.entropy.functionals import quadratic_integrand
from setlerkit.testing import (
    ball_exp_neg_f_series,
    gaussian_gradient_no_exp,
    gaussian_gradient_series,
)

FAST = QuadratureSettings(mc_samples=10_000)


def fast_spec(**kwargs) -> EntropySpec:
    return EntropySpec(quadrature=FAST, **kwargs)


class TestGaussianF:

    def test_closed_form_value(self):
        result = f_functional_gaussian(GaussianProfile(1.0), fast_spec())
        assert result.paper_value == pytest.approx(1.0 / (2.0 * math.pi**2), rel=1e-15)

    def test_closed_form_scaling(self):
        one = f_functional_gaussian(GaussianProfile(1.0), fast_spec()).paper_value
        two = f_functional_gaussian(GaussianProfile(2.0), fast_spec()).paper_value
        assert two == one / 2

    def test_quadrature_matches_series(self):
        result = f_functional_gaussian(GaussianProfile(1.0), fast_spec())
        assert result.quadrature_value == pytest.approx(gaussian_gradient_series(1.0), rel=1e-8)
        assert result.quadrature_value == pytest.approx(0.032909, rel=1e-4)

    def test_discrepancy_is_flagged(self):
        result = f_functional_gaussian(GaussianProfile(1.0), fast_spec())
        assert result.discrepancy_flag
        assert result.relative_discrepancy > 0.5

    def test_drop_exp_f(self):
        result = f_functional_gaussian(GaussianProfile(1.0), fast_spec(drop_exp_f=True))
        assert result.quadrature_value == pytest.approx(gaussian_gradient_no_exp(1.0), rel=1e-8)

    def test_monte_carlo_agrees(self):
        result = f_functional_gaussian(GaussianProfile(1.0), EntropySpec())
        assert abs(result.mc_value - result.quadrature_value) <= 3 * result.mc_stderr
        assert result.warnings == []

    def test_sigma_scaling_exponent(self):
        sigmas = np.array([0.5, 1.0, 2.0])
        kept = [f_functional_gaussian(GaussianProfile(s), fast_spec()).quadrature_value
                for s in sigmas]
        dropped = [
            f_functional_gaussian(GaussianProfile(s), fast_spec(drop_exp_f=True)).quadrature_value
            for s in sigmas
        ]
        slope_kept = np.polyfit(np.log(sigmas), np.log(kept), 1)[0]
        slope_dropped = np.polyfit(np.log(sigmas), np.log(dropped), 1)[0]
        assert slope_dropped == pytest.approx(-5.0, abs=1e-6)
        assert -5.0 < slope_kept < -4.7

    def test_rejects_bad_sigma(self):
        with pytest.raises(ValueError, match="sigma"):
            GaussianProfile(0.0)

    def test_settings_recorded(self):
        result = f_functional_gaussian(GaussianProfile(1.5), fast_spec())
        out = result.to_dict()
        assert out["settings"]["sigma"] == 1.5
        assert out["settings"]["mc_samples"] == 10_000
        assert "relative_discrepancy" in out

    def test_artifact_keys(self):
        out = f_functional_gaussian(GaussianProfile(1.0), fast_spec()).to_dict()
        assert {"paper_value", "quadrature_value", "mc_value", "discrepancy_flag"} <= set(out)


class TestQuadraticF:

    def test_values(self):
        result = f_functional_quadratic(EntropySpec())
        assert result.paper_value == pytest.approx(2.7842, abs=1e-4)
        assert result.quadrature_value == pytest.approx(6.0 * math.pi**1.5, rel=1e-9)
        assert result.discrepancy_flag
        assert abs(result.mc_value - result.quadrature_value) <= 3 * result.mc_stderr

    def test_cube_grid_matches_radial(self):
        cube = grid_integral_3d(quadratic_integrand, 6.0, 81)
        assert cube == pytest.approx(6.0 * math.pi**1.5, rel=1e-8)

    def test_radial_grid_converges(self):
        coarse = radial_grid_integral(quadratic_integrand, 10.0, 2001)
        fine = radial_grid_integral(quadratic_integrand, 10.0, 4001)
        assert abs(fine - coarse) < 1e-8


class TestPerturbedF:

    def test_zero_curvature_reduces_to_gaussian(self):
        profile = GaussianProfile(1.0)
        base = f_functional_gaussian(profile, fast_spec())
        perturbed = f_functional_perturbed(profile, fast_spec(scalar_curvature=0.0))
        assert perturbed.case == "perturbed"
        assert perturbed.quadrature_value == base.quadrature_value
        assert perturbed.paper_value == base.paper_value

    def test_linear_in_curvature(self):
        profile = GaussianProfile(1.0)
        v0 = f_functional_perturbed(profile, fast_spec()).quadrature_value
        v1 = f_functional_perturbed(profile, fast_spec(scalar_curvature=0.01)).quadrature_value
        v2 = f_functional_perturbed(profile, fast_spec(scalar_curvature=0.02)).quadrature_value
        assert (v2 - v0) == pytest.approx(2.0 * (v1 - v0), abs=1e-10)

    def test_correction_term(self):
        result = f_functional_perturbed(GaussianProfile(1.0), fast_spec(scalar_curvature=0.01))
        expected = 0.01 * ball_exp_neg_f_series(1.0, 10.0)
        assert result.settings["r_term"] == pytest.approx(expected, rel=1e-8)
        assert result.settings["r_term"] == pytest.approx(41.878, rel=1e-3)
        assert result.paper_value == pytest.approx(1.0 / (2.0 * math.pi**2) + expected, rel=1e-8)

    def test_dominant_curvature_warns(self):
        result = f_functional_perturbed(GaussianProfile(1.0), fast_spec(scalar_curvature=1e6))
        assert any("no longer small" in w for w in result.warnings)


class TestMonteCarlo:

    def test_seeded_reproducible(self):
        a = monte_carlo("quadratic", {}, 20_000, seed=7)
        b = monte_carlo("quadratic", {}, 20_000, seed=7)
        assert a == b

    def test_worker_count_does_not_change_estimate(self):
        serial = monte_carlo("quadratic", {}, 20_000, seed=7, n_batches=4, workers=1)
        parallel = monte_carlo("quadratic", {}, 20_000, seed=7, n_batches=4, workers=2)
        assert serial == parallel

    def test_streams_differ(self):
        a = monte_carlo("quadratic", {}, 20_000, seed=7, stream=0)
        b = monte_carlo("quadratic", {}, 20_000, seed=7, stream=1)
        assert a.value != b.value

    def test_unknown_estimator(self):
        with pytest.raises(ValueError, match="estimator"):
            monte_carlo("cubic", {}, 100)

    def test_minimum_sample_count(self):
        with pytest.raises(ValueError, match="mc_samples"):
            QuadratureSettings(mc_samples=100)
