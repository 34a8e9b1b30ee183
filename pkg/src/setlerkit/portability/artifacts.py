"""CSV/JSON artifact writers.

Every artifact is deterministic: full double precision (17 significant
digits), a fixed column order, sorted JSON keys and no timestamps, so two
runs with the same configuration produce byte-identical files. Each run also
writes a ``<stem>.config.json`` sidecar holding its effective configuration.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import numpy as np

from ..interfaces import Trajectory

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"
FLOAT_FORMAT = "%.17g"
INT_FORMAT = "%d"

PathLike = Union[str, Path]


def write_csv(
    path: PathLike,
    header: Sequence[str],
    columns: Sequence[np.ndarray],
    integer_columns: Sequence[str] = (),
) -> Path:
    """Write equal-length columns under a comma-separated header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if len(header) != len(columns):
        raise ValueError(f"{len(header)} header names for {len(columns)} columns")
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise ValueError(f"columns have unequal lengths {sorted(lengths)}")

    fmt = [INT_FORMAT if name in integer_columns else FLOAT_FORMAT for name in header]
    if lengths == {0}:
        path.write_text(",".join(header) + "\n")
        return path
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    np.savetxt(path, data, fmt=fmt, delimiter=",", header=",".join(header), comments="")
    logger.debug("Wrote %d rows to %s", len(data), path)
    return path


def write_trajectory_csv(
    path: PathLike,
    traj: Trajectory,
    include_cartesian: bool = False,
    integer_time: bool = False,
) -> Path:
    """``t,alpha,delta,r`` (plus ``x,y,z``) with one row per sample."""
    header = ["t", "alpha", "delta", "r"]
    columns = [traj.times, traj.alpha, traj.delta, traj.r]
    if include_cartesian:
        xyz = traj.cartesian()
        header += ["x", "y", "z"]
        columns += [xyz[:, 0], xyz[:, 1], xyz[:, 2]]
    return write_csv(path, header, columns, integer_columns=("t",) if integer_time else ())


def read_trajectory_csv(path: PathLike) -> Trajectory:
    """Read back the ``t,alpha,delta,r`` columns of a trajectory CSV."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return Trajectory(data[:, 0], data[:, 1:4])


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to plain JSON values.

    Non-finite floats become ``None``.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, complex):
        return {"real": obj.real, "imag": obj.imag}
    return obj


def write_json(path: PathLike, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n")
    logger.debug("Wrote %s", path)
    return path


@dataclass
class ArtifactManifest:
    """Sidecar describing which run produced an artifact."""
    command: str
    config: dict
    artifacts: list[str]
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "artifacts": list(self.artifacts),
            "config": self.config,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArtifactManifest":
        return cls(
            command=d["command"],
            config=d["config"],
            artifacts=list(d.get("artifacts", [])),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )


def sidecar_path(artifact: PathLike) -> Path:
    artifact = Path(artifact)
    return artifact.with_name(f"{artifact.stem}.config.json")


def write_sidecar(
    artifact: PathLike,
    command: str,
    config: dict,
    extra_artifacts: Optional[Sequence[PathLike]] = None,
) -> Path:
    """Write ``<stem>.config.json`` next to ``artifact``."""
    names = [Path(artifact).name] + [Path(p).name for p in extra_artifacts or ()]
    manifest = ArtifactManifest(command=command, config=config, artifacts=names)
    return write_json(sidecar_path(artifact), manifest.to_dict())


def read_sidecar(artifact: PathLike) -> ArtifactManifest:
    return ArtifactManifest.from_dict(json.loads(sidecar_path(artifact).read_text()))
