"""Run configuration for the setlerkit CLI.

A run is described by one flat :class:`RunConfig`. Values are layered in this
order, later layers winning:

1. the subcommand's default preset,
2. the preset named by the ``preset`` key,
3. the config file (flat TOML, or YAML for ``.yaml``/``.yml``),
4. command-line flags.

Unknown keys and invalid values raise :class:`~setlerkit.errors.ConfigError`.
"""

from __future__ import annotations

import math
import os
import tomllib
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError

CONFIG_ENV_VAR = "SETLERKIT_CONFIG"

COMMANDS = (
    "simulate",
    "map",
    "lyapunov",
    "bifurcate",
    "attractor",
    "compare",
    "sensitivity",
    "jacobian",
    "entropy-f",
    "entropy-w",
    "closed-form",
)

_CASE1 = {
    "lambda": 1.0,
    "beta": 23.0 / 8.0,
    "gamma": 8.0 / 3.0,
    "delta_f": 0.5,
    "omega": 0.5,
    "alpha0": 0.1,
    "delta0": 0.2,
    "r0": 0.3,
    "t0": 0.0,
    "t1": 10.0,
    "h": 0.01,
}

PRESETS: dict[str, dict] = {
    "case1": dict(_CASE1),
    "case2": {**_CASE1, "t1": 1e4, "h": 0.1, "checkpoint_every": 100},
    "chaos": {
        "lambda": 1.0,
        "beta": 0.5,
        "gamma": 0.5,
        "delta_f": 0.5,
        "omega": 1.0,
        "alpha0": 0.1,
        "delta0": 0.2,
        "r0": 4.24,
        "t0": 0.0,
        "t1": 200.0,
        "h": 0.01,
    },
    "attractor": {
        "lambda": 0.5,
        "beta": 8.0 / 3.0,
        "gamma": 28.0 / 3.0,
        "delta_f": 10.0,
        "omega": 0.1,
        "alpha0": 0.1,
        "delta0": 0.2,
        "r0": 4.24,
        "t0": 0.0,
        "t1": 200.0,
        "h": 0.01,
        "transient_time": 20.0,
    },
    "sensitivity-a": {
        "lambda": 10.0,
        "lambda_b": 17.2,
        "beta": 0.5,
        "gamma": 0.5,
        "delta_f": 0.5,
        "omega": 0.5,
    },
    "sensitivity-b": {
        "lambda": 1000.0,
        "lambda_b": 7e-5,
        "beta": 0.5,
        "gamma": 0.5,
        "delta_f": 0.5,
        "omega": 0.5,
    },
}

COMMAND_PRESETS: dict[str, Optional[str]] = {
    "simulate": "case1",
    "jacobian": "case1",
    "closed-form": "case1",
    "map": "chaos",
    "lyapunov": "chaos",
    "bifurcate": "chaos",
    "attractor": "attractor",
    "compare": "attractor",
    "sensitivity": "sensitivity-a",
    "entropy-f": None,
    "entropy-w": None,
}


class RunConfig(BaseModel):
    """Every setting any subcommand reads. Defaults are the first RK4 case."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Optional[str] = Field(default=None, description="Subcommand being run")
    preset: Optional[str] = Field(
        default=None, description=f"Named parameter preset: {', '.join(PRESETS)}"
    )

    # System parameters
    lam: float = Field(default=1.0, alias="lambda", description="Nonlinearity strength")
    beta: float = Field(default=23.0 / 8.0, description="alpha-forcing amplitude")
    gamma: float = Field(default=8.0 / 3.0, description="delta-forcing amplitude")
    delta_f: float = Field(default=0.5, description="r-forcing amplitude")
    omega: float = Field(default=0.5, description="Forcing angular frequency")
    r_forcing: Literal["amplitude", "declination"] = Field(
        default="amplitude", description="Scale the r forcing by delta_f or by the declination"
    )

    # Initial state and time grid
    alpha0: float = Field(default=0.1, description="Initial right ascension (rad)")
    delta0: float = Field(default=0.2, description="Initial declination (rad)")
    r0: float = Field(default=0.3, description="Initial radial distance")
    t0: float = Field(default=0.0, description="Start time")
    t1: float = Field(default=10.0, description="End time")
    h: float = Field(default=0.01, gt=0, description="Integration step")
    method: Literal["rk4", "euler"] = Field(default="rk4", description="Integrator")
    checkpoint_every: int = Field(default=1, ge=1, description="Keep every N-th node")
    cartesian: bool = Field(default=False, description="Also write x,y,z columns")
    n_steps: int = Field(default=1000, ge=1, description="Map iterations")
    divergence_bound: float = Field(
        default=1e8, gt=0, description="Magnitude treated as blow-up"
    )

    # Lyapunov
    lyapunov_method: Literal["flow", "map", "algorithm1"] = Field(
        default="flow", description="Exponent estimator"
    )
    d0: float = Field(default=1e-8, gt=0, description="Initial two-trajectory separation")
    renorm_every: int = Field(default=10, ge=1, description="Steps between renormalizations")
    transient: int = Field(default=500, ge=0, description="Discarded steps (map estimators)")
    transient_time: float = Field(
        default=0.0, ge=0, description="Discarded time (flow estimator, attractors)"
    )
    scalar_map: Literal["logistic", "linear", "identity"] = Field(
        default="logistic", description="Scalar map for algorithm1"
    )
    map_parameter: float = Field(default=4.0, description="Scalar map parameter a")
    x0: float = Field(default=0.1, description="Scalar map start point")
    n_iter: int = Field(default=100_000, ge=1, description="Scalar map orbit length")

    # Bifurcation
    keep: int = Field(default=200, ge=1, description="Samples recorded per lambda")
    n_lambda: int = Field(default=1000, ge=2, description="Number of lambda values")
    lambda_min: float = Field(default=0.5, description="Lowest lambda of the scan")
    lambda_max: float = Field(default=1.5, description="Highest lambda of the scan")

    # Sensitivity
    lambda_b: float = Field(default=17.2, description="Lambda of the second run")
    separation_threshold: float = Field(
        default=1e-6, gt=0, description="Separation reported as first exceedance"
    )

    # Reference system and attractors
    system: Literal["setler", "lorenz"] = Field(
        default="setler", description="System for attractor/lyapunov runs"
    )
    sigma: float = Field(default=10.0, description="Lorenz sigma")
    rho: float = Field(default=28.0, description="Lorenz rho")
    beta_l: float = Field(default=8.0 / 3.0, description="Lorenz beta")
    lorenz_x0: float = Field(default=1.0, description="Lorenz initial x")
    lorenz_y0: float = Field(default=1.0, description="Lorenz initial y")
    lorenz_z0: float = Field(default=1.0, description="Lorenz initial z")
    lyapunov_span: float = Field(
        default=50.0, gt=0, description="Time span of each comparison exponent"
    )

    # Entropy F-functional
    case: Literal["gaussian", "quadratic", "perturbed"] = Field(
        default="gaussian", description="F-functional case"
    )
    profile_sigma: float = Field(default=1.0, gt=0, description="Gaussian spread")
    scalar_curvature: float = Field(default=0.0, description="Constant scalar curvature R")
    r_max: float = Field(default=10.0, gt=0, description="Radial truncation")
    drop_exp_f: bool = Field(default=False, description="Drop e^-f in the Gaussian integrand")
    discrepancy_tol: float = Field(default=1e-2, gt=0, description="Closed-form tolerance")
    mc_samples: int = Field(default=1_000_000, ge=10_000, description="Monte Carlo samples")
    mc_batches: int = Field(default=4, ge=1, description="Monte Carlo RNG batches")
    seed: int = Field(default=0xC0FFEE, ge=0, description="Monte Carlo seed")

    # Entropy W-functional
    w_source: Literal["constants", "simulation"] = Field(
        default="constants", description="Take f from c1..kappa2 or fit it to a simulated r"
    )
    c1: float = Field(default=1e-4, description="f = c1 e^(kappa1 tau) + ...")
    kappa1: float = Field(default=0.1, description="Leading growth rate of f")
    c2: float = Field(default=0.0, description="Second coefficient of f")
    kappa2: float = Field(default=0.0, description="Second growth rate of f")
    fit_window: float = Field(
        default=0.2, gt=0, le=1, description="Tail fraction fitted when w_source=simulation"
    )
    tau_min: float = Field(default=0.0, description="First tau of the W series")
    tau_max: float = Field(default=40.0, description="Last tau of the W series")
    tau_step: float = Field(default=0.1, gt=0, description="Spacing of the W series")
    growth_window_start: Optional[float] = Field(
        default=None, description="Start of the growth-rate window (default: f < 1)"
    )
    growth_window_end: Optional[float] = Field(
        default=None, description="End of the growth-rate window"
    )

    # Closed forms
    cf_c1: float = Field(default=0.0, description="Integration constant of alpha")
    cf_c2: float = Field(default=0.0, description="Integration constant of delta")
    cf_c3: float = Field(default=0.0, description="Integration constant of r")
    residual_target: Literal["separable", "full"] = Field(
        default="separable", description="ODE the closed-form residual is checked against"
    )

    # Output and execution
    output: str = Field(default="setlerkit-out", description="Output directory")
    workers: int = Field(default=1, ge=1, description="Worker processes")

    @model_validator(mode="after")
    def check_cross_field(self) -> "RunConfig":
        for name, info in type(self).model_fields.items():
            value = getattr(self, name)
            if info.annotation is float and not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
        if self.t1 <= self.t0:
            raise ValueError("t1 must be greater than t0")
        if self.lambda_max <= self.lambda_min:
            raise ValueError("lambda_max must be greater than lambda_min")
        if self.tau_max <= self.tau_min:
            raise ValueError("tau_max must be greater than tau_min")
        if self.command == "closed-form" and self.omega == 0:
            raise ValueError("omega must be non-zero for the closed-form solutions")
        if self.command in ("attractor", "compare") and self.transient_time >= self.t1 - self.t0:
            raise ValueError("transient_time must be shorter than t1 - t0")
        if self.command == "lyapunov" and self.lyapunov_method == "map":
            if self.transient >= self.n_steps:
                raise ValueError("transient must be smaller than n_steps")
        if self.command == "lyapunov" and self.lyapunov_method == "algorithm1":
            if self.transient >= self.n_iter:
                raise ValueError("transient must be smaller than n_iter")
        if (self.growth_window_start is None) != (self.growth_window_end is None):
            raise ValueError("growth_window_start and growth_window_end go together")
        return self

    @classmethod
    def config_keys(cls) -> list[str]:
        """External key names accepted in files and as ``--key`` flags."""
        return [info.alias or name for name, info in cls.model_fields.items() if name != "command"]

    @classmethod
    def from_sources(
        cls,
        command: str,
        file_values: Optional[dict] = None,
        flag_values: Optional[dict] = None,
    ) -> "RunConfig":
        """Layer presets, file values and flags, then validate.

        Raises:
            ConfigError: unknown subcommand, preset or key, or an invalid value.
        """
        if command not in COMMANDS:
            raise ConfigError(f"unknown subcommand {command!r}")
        file_values = dict(file_values or {})
        flag_values = dict(flag_values or {})

        merged: dict = {}
        default_preset = COMMAND_PRESETS.get(command)
        if default_preset:
            merged.update(PRESETS[default_preset])
        named = flag_values.get("preset", file_values.get("preset"))
        if named is not None:
            if named not in PRESETS:
                raise ConfigError(
                    f"invalid value for 'preset': {named!r} is not one of {sorted(PRESETS)}"
                )
            merged.update(PRESETS[named])
        merged.update(file_values)
        merged.update(flag_values)
        merged["command"] = command

        try:
            return cls.model_validate(merged)
        except ValidationError as exc:
            raise ConfigError(_describe(exc)) from None

    def effective(self) -> dict:
        """Flat mapping of external key names to values, for sidecars."""
        return self.model_dump(by_alias=True)


def _describe(exc: ValidationError) -> str:
    messages = []
    for err in exc.errors():
        loc = ".".join(str(part) for part in err["loc"])
        if err["type"] == "extra_forbidden":
            messages.append(f"unknown config key {loc!r}")
        elif loc:
            messages.append(f"invalid value for {loc!r}: {err['msg']}")
        else:
            messages.append(f"invalid configuration: {err['msg']}")
    return "; ".join(messages)


def load_config_file(path: str | Path) -> dict:
    """Read a flat config file; ``.yaml``/``.yml`` as YAML, anything else as TOML.

    Raises:
        ConfigError: missing file, parse error, non-mapping content or a nested table.
    """
    path = Path(path).expanduser()
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        if path.suffix in (".yaml", ".yml"):
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        else:
            with open(path, "rb") as f:
                data = tomllib.load(f)
    except (tomllib.TOMLDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None

    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain key/value pairs")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"nested table {key!r} is not supported; use flat keys")
    return data


def default_config_path() -> Optional[str]:
    return os.environ.get(CONFIG_ENV_VAR)
