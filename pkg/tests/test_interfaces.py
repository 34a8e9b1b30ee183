"""Tests for the core value types, conversions and angle helpers."""

import math

import numpy as np
import pytest

from setlerkit.errors import NonFiniteStateError
from setlerkit.interfaces import (
    CartesianState,
    SetlerParams,
    SphericalState,
    TimeGrid,
    Trajectory,
    spherical_array_to_cartesian,
    spherical_to_cartesian,
    wrap_state,
)
from setlerkit.testing import angular_difference
from setlerkit.utils import is_out_of_bounds, wrap_angle, wrap_angles


class TestSphericalState:

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteStateError):
            SphericalState(float("nan"), 0.0, 1.0)

    def test_rejects_inf(self):
        with pytest.raises(NonFiniteStateError):
            SphericalState(0.0, 0.0, float("inf"))

    def test_nonfinite_is_value_error(self):
        with pytest.raises(ValueError):
            SphericalState(0.0, float("-inf"), 1.0)

    def test_frozen(self):
        s = SphericalState(0.1, 0.2, 0.3)
        with pytest.raises(AttributeError):
            s.alpha = 1.0

    def test_delta_not_clamped(self):
        assert SphericalState(0.0, 3.0, 1.0).delta == 3.0

    def test_array_round_trip(self):
        s = SphericalState(0.1, -0.2, 4.24)
        assert SphericalState.from_array(s.as_array()) == s


class TestSetlerParams:

    def test_defaults_unforced(self):
        p = SetlerParams(lam=2.0)
        assert (p.beta, p.gamma, p.delta_f, p.omega) == (0.0, 0.0, 0.0, 0.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(NonFiniteStateError):
            SetlerParams(lam=float("nan"))

    def test_rejects_unknown_forcing_mode(self):
        with pytest.raises(ValueError, match="r_forcing"):
            SetlerParams(lam=1.0, r_forcing="radius")

    def test_unforced_keeps_lambda(self, case1_params):
        p = case1_params.unforced()
        assert p.lam == case1_params.lam
        assert p.beta == p.gamma == p.delta_f == 0.0

    def test_to_dict_uses_lambda_key(self, case1_params):
        assert case1_params.to_dict()["lambda"] == 1.0


class TestConversion:

    def test_unit_x_axis(self):
        c = spherical_to_cartesian(SphericalState(0.0, 0.0, 1.0))
        assert (c.x, c.y, c.z) == (1.0, 0.0, 0.0)

    def test_north_pole(self):
        c = spherical_to_cartesian(SphericalState(0.0, math.pi / 2, 2.0))
        assert c.x == pytest.approx(0.0, abs=1e-15)
        assert c.y == pytest.approx(0.0, abs=1e-15)
        assert c.z == 2.0

    def test_origin(self):
        c = spherical_to_cartesian(SphericalState(1.3, -0.4, 0.0))
        assert c.norm == 0.0

    def test_norm_preserved_for_random_states(self, rng):
        for _ in range(100):
            r = rng.uniform(0.0, 10.0)
            s = SphericalState(rng.uniform(-10, 10), rng.uniform(-10, 10), r)
            assert spherical_to_cartesian(s).norm == pytest.approx(r, rel=1e-12, abs=1e-15)

    def test_array_matches_scalar(self, rng):
        values = rng.uniform(-3, 3, size=(20, 3))
        xyz = spherical_array_to_cartesian(values)
        for row, expected in zip(values, xyz):
            c = spherical_to_cartesian(SphericalState.from_array(row))
            np.testing.assert_allclose(c.as_array(), expected, rtol=0, atol=1e-14)

    def test_cartesian_state_rejects_nan(self):
        with pytest.raises(NonFiniteStateError):
            CartesianState(0.0, float("nan"), 0.0)


class TestWrap:

    def test_negative_angle(self):
        assert wrap_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)

    def test_two_pi_wraps_to_zero(self):
        assert wrap_angle(2 * math.pi) == 0.0

    def test_idempotent(self, rng):
        for a in rng.uniform(-100, 100, size=200):
            once = wrap_angle(float(a))
            assert wrap_angle(once) == once
            assert 0.0 <= once < 2 * math.pi

    def test_tiny_negative_stays_in_range(self):
        assert 0.0 <= wrap_angle(-1e-18) < 2 * math.pi

    def test_vectorized_matches_scalar(self, rng):
        angles = rng.uniform(-50, 50, size=50)
        np.testing.assert_array_equal(wrap_angles(angles), [wrap_angle(a) for a in angles])

    def test_wrap_state_only_touches_alpha(self):
        s = wrap_state(SphericalState(-0.5, 7.0, 2.0))
        assert s.alpha == pytest.approx(2 * math.pi - 0.5)
        assert (s.delta, s.r) == (7.0, 2.0)

    def test_angular_difference_folds(self):
        assert angular_difference(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)


class TestTimeGrid:

    def test_step_count(self):
        assert TimeGrid(0.0, 10.0, 0.01).n_steps == 1000

    def test_floating_point_quotient(self):
        # 0.3 / 0.1 is 2.9999999999999996 in binary floating point
        assert TimeGrid(0.0, 0.3, 0.1).n_steps == 3

    def test_non_divisible_span_floors(self):
        assert TimeGrid(0.0, 1.0, 0.3).n_steps == 3

    def test_nodes_are_not_accumulated(self):
        grid = TimeGrid(0.0, 10.0, 0.01)
        nodes = grid.nodes()
        assert len(nodes) == 1001
        assert nodes[-1] == grid.node(1000)

    def test_rejects_reversed_interval(self):
        with pytest.raises(ValueError, match="t1"):
            TimeGrid(1.0, 0.0, 0.1)

    def test_rejects_non_positive_step(self):
        with pytest.raises(ValueError, match="h"):
            TimeGrid(0.0, 1.0, 0.0)


class TestTrajectory:

    def test_arrays_are_read_only(self):
        traj = Trajectory([0.0, 1.0], [[0.0, 0.0, 1.0], [0.1, 0.0, 1.0]])
        with pytest.raises(ValueError):
            traj.values[0, 0] = 5.0

    def test_times_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            Trajectory([0.0, 0.0], [[0.0, 0.0, 1.0], [0.1, 0.0, 1.0]])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            Trajectory([0.0, 1.0, 2.0], [[0.0, 0.0, 1.0], [0.1, 0.0, 1.0]])

    def test_rejects_nonfinite_state(self):
        with pytest.raises(NonFiniteStateError):
            Trajectory([0.0], [[0.0, float("nan"), 1.0]])

    def test_iteration_yields_states(self):
        traj = Trajectory([0, 1], [[0.0, 0.0, 1.0], [0.1, 0.2, 1.5]])
        items = list(traj)
        assert items[1] == (1, SphericalState(0.1, 0.2, 1.5))
        assert traj.final == SphericalState(0.1, 0.2, 1.5)

    def test_head(self):
        traj = Trajectory([0, 1, 2], np.zeros((3, 3)))
        assert len(traj.head(2)) == 2
        assert len(traj.head(0)) == 1


class TestOutOfBounds:

    def test_finite_small(self):
        assert not is_out_of_bounds(np.array([1.0, -2.0, 3.0]), 1e8)

    def test_large_component(self):
        assert is_out_of_bounds(np.array([1.0, 2e8, 3.0]), 1e8)

    def test_nan(self):
        assert is_out_of_bounds(np.array([np.nan, 0.0, 0.0]), 1e8)
