"""Tests for CSV/JSON artifact writers and config sidecars."""

import json
import math

import numpy as np
import pytest

from setlerkit.interfaces import Trajectory
from setlerkit.portability import (
    ArtifactManifest,
    read_sidecar,
    read_trajectory_csv,
    sidecar_path,
    to_jsonable,
    write_csv,
    write_json,
    write_sidecar,
    write_trajectory_csv,
)


class TestCsv:

    def test_full_precision(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["t", "v"], [[0.0], [1.0 / 3.0]])
        rows = path.read_text().splitlines()
        assert rows[0] == "t,v"
        assert float(rows[1].split(",")[1]) == 1.0 / 3.0

    def test_integer_columns(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["n", "v"], [[0, 1], [0.5, 0.25]], ("n",))
        assert path.read_text().splitlines()[1:] == ["0,0.5", "1,0.25"]

    def test_empty_columns_write_header(self, tmp_path):
        path = write_csv(tmp_path / "e.csv", ["a", "b"], [[], []])
        assert path.read_text() == "a,b\n"

    def test_creates_parent_directories(self, tmp_path):
        path = write_csv(tmp_path / "deep" / "dir" / "a.csv", ["a"], [[1.0]])
        assert path.exists()

    def test_unequal_lengths(self, tmp_path):
        with pytest.raises(ValueError, match="unequal"):
            write_csv(tmp_path / "a.csv", ["a", "b"], [[1.0], [1.0, 2.0]])

    def test_header_mismatch(self, tmp_path):
        with pytest.raises(ValueError, match="header"):
            write_csv(tmp_path / "a.csv", ["a"], [[1.0], [2.0]])

    def test_trajectory_read_back(self, tmp_path):
        traj = Trajectory([0.0, 0.1, 0.2], [[0.1, 0.2, 0.3], [0.2, 0.3, 0.4], [0.3, 0.4, 0.5]])
        path = write_trajectory_csv(tmp_path / "traj.csv", traj, include_cartesian=True)
        assert path.read_text().splitlines()[0] == "t,alpha,delta,r,x,y,z"
        back = read_trajectory_csv(path)
        np.testing.assert_array_equal(back.values, traj.values)
        np.testing.assert_array_equal(back.times, traj.times)


class TestJson:

    def test_non_finite_becomes_null(self):
        assert to_jsonable({"a": math.nan, "b": [math.inf, 1.0]}) == {"a": None, "b": [None, 1.0]}

    def test_numpy_values(self):
        out = to_jsonable({"x": np.float64(0.5), "n": np.int64(3), "flag": np.bool_(True),
                           "arr": np.array([1.0, 2.0])})
        assert out == {"x": 0.5, "n": 3, "flag": True, "arr": [1.0, 2.0]}
        assert type(out["n"]) is int

    def test_complex(self):
        assert to_jsonable(complex(1.0, -2.0)) == {"real": 1.0, "imag": -2.0}

    def test_sorted_keys_and_newline(self, tmp_path):
        path = write_json(tmp_path / "r.json", {"b": 1, "a": 2})
        text = path.read_text()
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": 2, "b": 1}


class TestSidecar:

    def test_path(self, tmp_path):
        assert sidecar_path(tmp_path / "trajectory.csv").name == "trajectory.config.json"

    def test_write_and_read(self, tmp_path):
        artifact = tmp_path / "bifurcation.csv"
        write_sidecar(artifact, "bifurcate", {"lambda": 1.0}, [tmp_path / "bifurcation.json"])
        manifest = read_sidecar(artifact)
        assert manifest == ArtifactManifest(
            "bifurcate", {"lambda": 1.0}, ["bifurcation.csv", "bifurcation.json"]
        )
        assert manifest.schema_version == "1.0"
