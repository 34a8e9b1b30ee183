"""Artifact serialization (CSV, JSON, config sidecars)."""

from .artifacts import (
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

__all__ = [
    "ArtifactManifest",
    "read_sidecar",
    "read_trajectory_csv",
    "sidecar_path",
    "to_jsonable",
    "write_csv",
    "write_json",
    "write_sidecar",
    "write_trajectory_csv",
]
