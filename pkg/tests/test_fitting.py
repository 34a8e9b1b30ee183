"""Tests for the asymptotic exponential fit."""

import numpy as np
import pytest

from setlerkit.analysis import fit_asymptotic, tail_slopes
from setlerkit.errors import FitError


class TestFitAsymptotic:

    def test_single_exponential(self):
        t = np.linspace(0.0, 10.0, 50)
        fit = fit_asymptotic(t, 2.0 * np.exp(0.5 * t))
        assert fit.single
        assert fit.c1 == pytest.approx(2.0, rel=0.01)
        assert fit.kappa1 == pytest.approx(0.5, rel=0.01)
        assert fit.sign == 1

    def test_random_single_exponentials(self, rng):
        t = np.linspace(0.0, 10.0, 50)
        for _ in range(50):
            c = float(rng.uniform(0.1, 10.0))
            k = float(rng.uniform(0.05, 1.0))
            fit = fit_asymptotic(t, c * np.exp(k * t))
            assert fit.c1 == pytest.approx(c, rel=0.01)
            assert fit.kappa1 == pytest.approx(k, rel=0.01)

    def test_constant_series(self):
        t = np.linspace(0.0, 20.0, 40)
        fit = fit_asymptotic(t, np.full(40, 7.0))
        assert abs(fit.kappa1) < 1e-6
        assert fit.c1 == pytest.approx(7.0, rel=1e-9)

    def test_two_term_recovery(self):
        t = np.linspace(0.0, 20.0, 200)
        fit = fit_asymptotic(t, 2.0 * np.exp(0.5 * t) + 3.0 * np.exp(-0.2 * t))
        assert not fit.single
        assert fit.kappa1 >= fit.kappa2
        assert fit.c1 == pytest.approx(2.0, rel=0.05)
        assert fit.kappa1 == pytest.approx(0.5, rel=0.05)
        assert fit.c2 == pytest.approx(3.0, rel=0.05)
        assert fit.kappa2 == pytest.approx(-0.2, rel=0.05)

    def test_negative_series_reports_sign(self):
        t = np.linspace(0.0, 10.0, 50)
        fit = fit_asymptotic(t, -3.0 * np.exp(0.2 * t))
        assert fit.sign == -1
        assert fit.c1 == pytest.approx(3.0, rel=0.01)

    def test_tail_window_shifts_back_to_origin(self):
        t = np.linspace(0.0, 100.0, 1001)
        fit = fit_asymptotic(t, 1e-3 * np.exp(0.05 * t), window=0.2)
        assert fit.c1 == pytest.approx(1e-3, rel=1e-6)
        assert fit.value(50.0) == pytest.approx(1e-3 * np.exp(2.5), rel=1e-6)
        assert fit.derivative(50.0) == pytest.approx(5e-5 * np.exp(2.5), rel=1e-6)

    def test_too_few_points(self):
        t = np.linspace(0.0, 1.0, 10)
        with pytest.raises(FitError, match="tail points"):
            fit_asymptotic(t, np.exp(t))

    def test_mixed_sign_tail(self):
        t = np.linspace(0.0, 10.0, 50)
        with pytest.raises(FitError, match="one sign"):
            fit_asymptotic(t, np.sin(t))

    def test_zero_in_tail(self):
        t = np.linspace(0.0, 10.0, 50)
        values = np.exp(t)
        values[-1] = 0.0
        with pytest.raises(FitError):
            fit_asymptotic(t, values)

    def test_window_range(self):
        t = np.linspace(0.0, 10.0, 50)
        with pytest.raises(ValueError, match="window"):
            fit_asymptotic(t, np.exp(t), window=0.0)

    def test_origin_overflow_raises(self):
        t = np.linspace(2000.0, 2100.0, 200)
        y = 3.0 * np.exp(-0.5 * (t - 2000.0))
        with pytest.raises(FitError, match="overflow"):
            fit_asymptotic(t, y, window=1.0)


class TestTailSlopes:

    def test_linear_columns(self):
        t = np.linspace(0.0, 10.0, 101)
        values = np.column_stack([-0.5 * t + 1.0, 2.0 * t, np.full_like(t, 3.0)])
        slopes = tail_slopes(t, values)
        np.testing.assert_allclose(slopes, [-0.5, 2.0, 0.0], atol=1e-10)

    def test_only_tail_counts(self):
        t = np.linspace(0.0, 10.0, 101)
        # flat for the first 80%, rising over the rest
        y = np.where(t < 8.0, 0.0, t - 8.0)
        assert tail_slopes(t, y)[0] == pytest.approx(1.0, abs=1e-10)
        assert tail_slopes(t, y, fraction=1.0)[0] < 1.0

    def test_too_short(self):
        with pytest.raises(FitError, match="2 tail points"):
            tail_slopes([0.0, 1.0, 2.0], [1.0, 2.0, 3.0], fraction=0.2)

    def test_fraction_range(self):
        with pytest.raises(ValueError, match="fraction"):
            tail_slopes([0.0, 1.0], [0.0, 1.0], fraction=0.0)
