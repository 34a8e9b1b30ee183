"""Tests for the separable closed-form solutions."""

import logging
import math

import numpy as np
import pytest

from setlerkit.entropy import (
    ClosedFormParams,
    closed_form_alpha,
    closed_form_delta,
    closed_form_r,
    closed_form_residual,
    closed_form_series,
)
from setlerkit.interfaces import TimeGrid


class TestClosedFormAngles:

    def test_alpha_constant_exponent(self):
        p = ClosedFormParams(lam=0.0, beta=0.0, gamma=0.0, omega=1.0)
        for tau in (0.0, 1.0, 17.5):
            assert closed_form_alpha(tau, p) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_delta_constant_exponent(self):
        p = ClosedFormParams(lam=0.0, beta=0.0, gamma=0.0, omega=1.0)
        assert closed_form_delta(3.0, p) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_alpha_formula(self):
        p = ClosedFormParams(lam=1.0, beta=0.5, gamma=0.0, omega=1.0)
        expected = 2.0 * math.atan(math.exp(1.0 - 0.5 * math.cos(1.0)))
        assert closed_form_alpha(1.0, p) == pytest.approx(expected, rel=1e-14)

    def test_delta_formula(self):
        p = ClosedFormParams(lam=0.5, beta=0.0, gamma=1.0, omega=0.5, alpha0=0.3, c2=0.1)
        expected = 2.0 * math.atan(
            math.exp(0.5 * math.cos(0.3) * 2.0 + (1.0 / 0.5) * math.sin(1.0) + 0.1)
        )
        assert closed_form_delta(2.0, p) == pytest.approx(expected, rel=1e-14)

    def test_delta_without_forcing(self):
        p = ClosedFormParams(lam=0.8, beta=0.0, gamma=0.0, omega=2.0, alpha0=0.4, c2=-0.3)
        expected = 2.0 * math.atan(math.exp(0.8 * math.cos(0.4) * 1.5 - 0.3))
        assert closed_form_delta(1.5, p) == pytest.approx(expected, rel=1e-14)

    def test_saturates_at_pi(self, caplog):
        p = ClosedFormParams(lam=0.0, beta=0.0, gamma=0.0, omega=1.0, c1=1000.0)
        with caplog.at_level(logging.WARNING):
            value = closed_form_alpha(0.0, p)
        assert value == math.pi
        assert "saturated" in caplog.text

    def test_array_input(self):
        p = ClosedFormParams(lam=1.0, beta=0.5, gamma=0.2, omega=1.0)
        taus = np.array([0.0, 0.5, 1.0])
        values = closed_form_alpha(taus, p)
        assert values.shape == (3,)
        assert values[1] == pytest.approx(closed_form_alpha(0.5, p), rel=1e-15)

    def test_zero_omega_rejected(self):
        with pytest.raises(ValueError, match="omega"):
            ClosedFormParams(lam=1.0, beta=0.5, gamma=0.5, omega=0.0)


class TestClosedFormResidual:

    def test_separable_residual_random_draws(self, rng):
        grid = TimeGrid(0.0, 10.0, 1e-3)
        for _ in range(20):
            p = ClosedFormParams(
                lam=float(rng.uniform(-2, 2)),
                beta=float(rng.uniform(-2, 2)),
                gamma=float(rng.uniform(-2, 2)),
                omega=float(rng.uniform(0.2, 3.0)),
                delta0=float(rng.uniform(-1.5, 1.5)),
                c1=float(rng.uniform(-2, 2)),
            )
            report = closed_form_residual(p, grid)
            assert report.max_residual < 1e-8
            assert report.target == "separable"

    def test_autonomous_residual(self):
        p = ClosedFormParams(lam=1.3, beta=0.0, gamma=0.0, omega=1.0, delta0=0.2)
        assert closed_form_residual(p, TimeGrid(0.0, 5.0, 1e-3)).max_residual < 1e-10

    def test_full_ode_is_not_solved(self):
        p = ClosedFormParams(lam=1.0, beta=1.0, gamma=0.0, omega=1.0)
        report = closed_form_residual(p, TimeGrid(0.0, 10.0, 1e-2), ode="full")
        assert report.max_residual > 0.1

    def test_saturated_points_are_skipped(self):
        p = ClosedFormParams(lam=100.0, beta=0.0, gamma=0.0, omega=1.0)
        report = closed_form_residual(p, TimeGrid(0.0, 10.0, 0.01))
        assert report.skipped > 0
        assert report.n_points == 1001

    def test_unknown_target(self):
        p = ClosedFormParams(lam=1.0, beta=0.0, gamma=0.0, omega=1.0)
        with pytest.raises(ValueError, match="ode"):
            closed_form_residual(p, TimeGrid(0.0, 1.0, 0.1), ode="exact")


class TestClosedFormR:

    def test_pure_forcing_integral(self):
        p = ClosedFormParams(lam=0.0, beta=0.3, gamma=0.2, omega=0.7, delta_f=1.5, c3=0.25)
        for tau in (0.5, 3.0, 12.0):
            expected = 0.25 + 1.5 * (1.0 - math.cos(0.7 * tau)) / 0.7
            assert closed_form_r(tau, p) == pytest.approx(expected, rel=1e-9)

    def test_unsorted_array_matches_scalars(self):
        p = ClosedFormParams(lam=1.0, beta=0.5, gamma=0.5, omega=1.0, delta_f=0.5)
        taus = np.array([2.0, 0.5, 1.0])
        values = closed_form_r(taus, p)
        for tau, value in zip(taus, values):
            assert value == pytest.approx(closed_form_r(float(tau), p), rel=1e-9)

    def test_non_negative_rate_without_forcing(self):
        p = ClosedFormParams(lam=1.0, beta=0.5, gamma=0.5, omega=1.0)
        values = closed_form_r(np.linspace(0.0, 5.0, 11), p)
        assert np.all(np.diff(values) >= -1e-12)

    def test_series_columns(self):
        p = ClosedFormParams(lam=1.0, beta=0.5, gamma=0.5, omega=1.0)
        series = closed_form_series(TimeGrid(0.0, 1.0, 0.1), p)
        assert set(series) == {"tau", "alpha", "delta", "r"}
        assert all(len(v) == 11 for v in series.values())
        assert series["r"][0] == 0.0
