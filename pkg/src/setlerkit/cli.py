"""setlerkit CLI: one subcommand per experiment.

Usage:
    setlerkit simulate                      # RK4 trajectory (first case defaults)
    setlerkit map --lambda 1.2              # forced discrete map
    setlerkit lyapunov --lyapunov-method map
    setlerkit bifurcate --n-lambda 500
    setlerkit attractor --system lorenz
    setlerkit compare                       # Lorenz vs Setler attractor
    setlerkit sensitivity --preset sensitivity-b
    setlerkit jacobian
    setlerkit entropy-f --case quadratic
    setlerkit entropy-w
    setlerkit closed-form

Every config key is also a ``--key`` flag; ``--config FILE`` (or the
SETLERKIT_CONFIG environment variable) supplies a flat TOML/YAML file.
Artifacts go to ``--output`` with a ``<stem>.config.json`` sidecar each.
Exit codes: 0 success, 1 numerical failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib.metadata import version as metadata_version
from pathlib import Path
from typing import Callable, Literal, Optional, Sequence, get_args, get_origin

import numpy as np

from .analysis import (
    SCALAR_MAPS,
    bifurcation_scan,
    fit_asymptotic,
    jacobian_autonomous,
    largest_lyapunov,
    lyapunov_1d_result,
    lyapunov_map_two_trajectory,
    lyapunov_two_trajectory_result,
    numerical_jacobian,
    sensitivity_pair,
)
from .analysis.fitting import AsymptoticFit
from .config import COMMANDS, RunConfig, default_config_path, load_config_file
from .dynamics import SetlerField, integrate, iterate_map
from .entropy import (
    ClosedFormParams,
    EntropySpec,
    GaussianProfile,
    QuadratureSettings,
    closed_form_residual,
    closed_form_series,
    compare_growth,
    f_functional_gaussian,
    f_functional_perturbed,
    f_functional_quadratic,
    w_series,
)
from .errors import ConfigError, DivergenceError, FitError, QuadratureError
from .interfaces import SetlerParams, SphericalState, TimeGrid
from .portability.artifacts import write_csv, write_json, write_sidecar, write_trajectory_csv
from .reference import (
    LorenzField,
    LorenzParams,
    PointCloud,
    attractor_sample,
    compare_attractors,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

COMMAND_HELP = {
    "simulate": "Integrate the continuous system with RK4",
    "map": "Iterate the forced discrete map",
    "lyapunov": "Estimate the largest Lyapunov exponent",
    "bifurcate": "Scan the map over lambda",
    "attractor": "Sample a post-transient attractor point cloud",
    "compare": "Compare the Lorenz and Setler attractors",
    "sensitivity": "Separation of two runs with different lambda",
    "jacobian": "Jacobian and eigenvalues of the unforced field",
    "entropy-f": "F-functional: closed form, quadrature and Monte Carlo",
    "entropy-w": "W-functional series and its growth rate",
    "closed-form": "Separable closed-form solutions and their residual",
}


def _get_version() -> str:
    try:
        return metadata_version("setlerkit")
    except Exception:
        return "unknown"


# ---------------------------------------------------------------------------- #
# Argument parsing
# ---------------------------------------------------------------------------- #


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _parse_int(text: str) -> int:
    return int(text, 0)


def _flag_kwargs(annotation, description: str, default) -> dict:
    kwargs: dict = {"default": argparse.SUPPRESS, "help": f"{description} (default: {default})"}
    if get_origin(annotation) is Literal:
        kwargs["choices"] = list(get_args(annotation))
        return kwargs
    args = [a for a in get_args(annotation) if a is not type(None)]
    base = args[0] if args else annotation
    if base is bool:
        kwargs["type"] = _parse_bool
        kwargs["metavar"] = "BOOL"
    elif base is int:
        kwargs["type"] = _parse_int
    elif base is float:
        kwargs["type"] = float
    else:
        kwargs["type"] = str
    return kwargs


def _config_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", "-c", default=None, help="Flat TOML or YAML config file")
    parent.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    group = parent.add_argument_group("configuration keys")
    for name, info in RunConfig.model_fields.items():
        if name == "command":
            continue
        key = info.alias or name
        group.add_argument(
            f"--{key.replace('_', '-')}",
            dest=key,
            **_flag_kwargs(info.annotation, info.description or key, info.default),
        )
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setlerkit",
        description="Forced Setler dynamics, chaos diagnostics and entropy functionals",
    )
    parser.add_argument(
        "--version", "-V",
        action="version",
        version=f"%(prog)s {_get_version()}",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    parent = _config_parent()
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[parent], help=COMMAND_HELP[command])
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = dict(vars(args))
    command = values.pop("command")
    config_path = values.pop("config", None) or default_config_path()
    values.pop("verbose", None)
    file_values = load_config_file(config_path) if config_path else {}
    return RunConfig.from_sources(command, file_values, values)


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse ``argv`` (subcommand first) into a validated RunConfig.

    Raises:
        ConfigError: unknown key, invalid value or unreadable config file.
        SystemExit: argparse usage errors (exit code 2).
    """
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise ConfigError("a subcommand is required")
    return _config_from_args(args)


# ---------------------------------------------------------------------------- #
# Helpers
# ---------------------------------------------------------------------------- #


def _params(config: RunConfig) -> SetlerParams:
    return SetlerParams(
        lam=config.lam,
        beta=config.beta,
        gamma=config.gamma,
        delta_f=config.delta_f,
        omega=config.omega,
        r_forcing=config.r_forcing,
    )


def _initial_state(config: RunConfig) -> SphericalState:
    return SphericalState(config.alpha0, config.delta0, config.r0)


def _grid(config: RunConfig) -> TimeGrid:
    return TimeGrid(config.t0, config.t1, config.h)


def _lorenz(config: RunConfig) -> tuple[LorenzParams, np.ndarray]:
    start = np.array([config.lorenz_x0, config.lorenz_y0, config.lorenz_z0])
    return LorenzParams(config.sigma, config.rho, config.beta_l), start


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _sidecar(config: RunConfig, artifact: Path, *extra: Path) -> None:
    write_sidecar(artifact, config.command or "", config.effective(), extra)


def _write_cloud(path: Path, cloud: PointCloud) -> Path:
    pts = cloud.points
    return write_csv(path, ["x", "y", "z"], [pts[:, 0], pts[:, 1], pts[:, 2]])


# ---------------------------------------------------------------------------- #
# Subcommands
# ---------------------------------------------------------------------------- #


def cmd_simulate(config: RunConfig) -> int:
    path = _output_dir(config) / "trajectory.csv"
    try:
        traj = integrate(
            _initial_state(config), _grid(config), _params(config),
            method=config.method,
            checkpoint_every=config.checkpoint_every,
            divergence_bound=config.divergence_bound,
        )
    except DivergenceError as exc:
        if exc.partial is not None:
            write_trajectory_csv(path, exc.partial, include_cartesian=config.cartesian)
            _sidecar(config, path)
        raise
    write_trajectory_csv(path, traj, include_cartesian=config.cartesian)
    _sidecar(config, path)
    final = traj.final
    print(
        f"simulate: {len(traj)} samples to {path}; final alpha={final.alpha:.6g} "
        f"delta={final.delta:.6g} r={final.r:.6g}"
    )
    return 0


def cmd_map(config: RunConfig) -> int:
    path = _output_dir(config) / "map.csv"
    try:
        traj = iterate_map(
            _initial_state(config), _params(config), config.n_steps, config.divergence_bound
        )
    except DivergenceError as exc:
        write_trajectory_csv(path, exc.partial, integer_time=True)
        _sidecar(config, path)
        raise
    write_trajectory_csv(path, traj, integer_time=True)
    _sidecar(config, path)
    print(f"map: {config.n_steps} steps to {path}; final state {traj.final}")
    return 0


def cmd_lyapunov(config: RunConfig) -> int:
    path = _output_dir(config) / "lyapunov.json"
    if config.lyapunov_method == "algorithm1":
        result = lyapunov_1d_result(
            SCALAR_MAPS[config.scalar_map], config.x0, config.map_parameter,
            config.n_iter, config.transient,
        )
    elif config.lyapunov_method == "map":
        result = lyapunov_map_two_trajectory(
            _params(config), _initial_state(config), config.n_steps,
            d0=config.d0,
            renorm_every=config.renorm_every,
            transient=config.transient,
            divergence_bound=config.divergence_bound,
        )
    elif config.system == "lorenz":
        lorenz, start = _lorenz(config)
        result = largest_lyapunov(
            LorenzField(lorenz), start, _grid(config),
            d0=config.d0,
            renorm_every=config.renorm_every,
            transient=config.transient_time,
            divergence_bound=config.divergence_bound,
        )
        result.params.update(lorenz.to_dict())
    else:
        result = lyapunov_two_trajectory_result(
            _params(config), _initial_state(config), _grid(config),
            d0=config.d0,
            renorm_every=config.renorm_every,
            transient=config.transient_time,
            divergence_bound=config.divergence_bound,
        )
    write_json(path, result.to_dict())
    _sidecar(config, path)
    print(f"lyapunov ({result.method}): exponent {result.exponent:.6g}")
    return 0


def cmd_bifurcate(config: RunConfig) -> int:
    out = _output_dir(config)
    data = bifurcation_scan(
        _params(config),
        lambda_range=(config.lambda_min, config.lambda_max),
        n_lambda=config.n_lambda,
        transient=config.transient,
        keep=config.keep,
        s0=_initial_state(config),
        divergence_bound=config.divergence_bound,
        workers=config.workers,
    )
    lams, idx, vals = data.rows()
    path = write_csv(
        out / "bifurcation.csv",
        ["lambda", "sample_index", "alpha_wrapped"],
        [lams, idx, vals],
        integer_columns=("sample_index",),
    )
    summary = write_json(
        out / "bifurcation.json",
        {
            "n_lambda": config.n_lambda,
            "diverged": int(np.count_nonzero(data.diverged)),
            "warnings": data.warnings,
        },
    )
    _sidecar(config, path, summary)
    print(
        f"bifurcate: {config.n_lambda} lambda values, {len(vals)} samples, "
        f"{int(np.count_nonzero(data.diverged))} diverged"
    )
    return 0


def _sample(config: RunConfig, system: str) -> PointCloud:
    if system == "lorenz":
        lorenz, start = _lorenz(config)
        return attractor_sample(
            "lorenz", lorenz, start, _grid(config), config.transient_time,
            config.divergence_bound,
        )
    return attractor_sample(
        "setler", _params(config), _initial_state(config), _grid(config),
        config.transient_time, config.divergence_bound,
    )


def cmd_attractor(config: RunConfig) -> int:
    cloud = _sample(config, config.system)
    path = _write_cloud(_output_dir(config) / "attractor.csv", cloud)
    _sidecar(config, path)
    print(f"attractor ({config.system}): {len(cloud)} points to {path}")
    return 0


def cmd_compare(config: RunConfig) -> int:
    out = _output_dir(config)
    lorenz = _sample(config, "lorenz")
    setler = _sample(config, "setler")
    report = compare_attractors(
        lorenz, setler,
        lyapunov_span=config.lyapunov_span,
        renorm_every=config.renorm_every,
        d0=config.d0,
        divergence_bound=config.divergence_bound,
        workers=config.workers,
    )
    path = write_json(out / "comparison.json", report.to_dict())
    clouds = [_write_cloud(out / "lorenz.csv", lorenz), _write_cloud(out / "setler.csv", setler)]
    _sidecar(config, path, *clouds)
    print(
        f"compare: largest exponents lorenz={report.largest_lyapunov_a:.6g} "
        f"setler={report.largest_lyapunov_b:.6g}"
    )
    return 0


def cmd_sensitivity(config: RunConfig) -> int:
    out = _output_dir(config)
    p_a = _params(config)
    series = sensitivity_pair(
        p_a, p_a.with_lambda(config.lambda_b), _initial_state(config), _grid(config),
        threshold=config.separation_threshold,
        divergence_bound=config.divergence_bound,
        workers=config.workers,
    )
    path = write_csv(
        out / "sensitivity.csv",
        ["t", "alpha_a", "alpha_b", "separation"],
        [series.times, series.alpha_a, series.alpha_b, series.separation],
    )
    summary = write_json(out / "sensitivity.json", series.summary())
    _sidecar(config, path, summary)
    print(
        f"sensitivity: lambda {config.lam:g} vs {config.lambda_b:g}, "
        f"max separation {series.max_separation:.6g}"
    )
    return 0


def cmd_jacobian(config: RunConfig) -> int:
    s = _initial_state(config)
    report = jacobian_autonomous(s, config.lam)
    numeric = numerical_jacobian(SetlerField(_params(config).unforced()), s.as_array())
    payload = report.to_dict()
    payload["characteristic_residual"] = report.characteristic_residual()
    payload["finite_difference_gap"] = float(np.max(np.abs(numeric - report.matrix)))
    payload["state"] = {"alpha": s.alpha, "delta": s.delta, "r": s.r}
    payload["lambda"] = config.lam
    path = write_json(_output_dir(config) / "jacobian.json", payload)
    _sidecar(config, path)
    eig = ", ".join(f"{complex(mu):.6g}" for mu in report.eigenvalues)
    print(f"jacobian: eigenvalues [{eig}]")
    return 0


def _entropy_spec(config: RunConfig) -> EntropySpec:
    return EntropySpec(
        scalar_curvature=config.scalar_curvature,
        r_max=config.r_max,
        quadrature=QuadratureSettings(
            mc_samples=config.mc_samples,
            mc_batches=config.mc_batches,
            seed=config.seed,
            workers=config.workers,
        ),
        drop_exp_f=config.drop_exp_f,
        discrepancy_tol=config.discrepancy_tol,
    )


def cmd_entropy_f(config: RunConfig) -> int:
    spec = _entropy_spec(config)
    profile = GaussianProfile(config.profile_sigma)
    if config.case == "quadratic":
        result = f_functional_quadratic(spec)
    elif config.case == "perturbed":
        result = f_functional_perturbed(profile, spec)
    else:
        result = f_functional_gaussian(profile, spec)
    path = write_json(_output_dir(config) / "entropy_f.json", result.to_dict())
    _sidecar(config, path)
    print(
        f"entropy-f ({result.case}): closed form {result.paper_value:.8g}, "
        f"quadrature {result.quadrature_value:.8g}, MC {result.mc_value:.8g} "
        f"+/- {result.mc_stderr:.2g}, discrepancy_flag={result.discrepancy_flag}"
    )
    return 0


def _driving_fit(config: RunConfig) -> AsymptoticFit:
    if config.w_source == "constants":
        return AsymptoticFit(config.c1, config.kappa1, config.c2, config.kappa2)
    traj = integrate(
        _initial_state(config), _grid(config), _params(config),
        checkpoint_every=config.checkpoint_every,
        divergence_bound=config.divergence_bound,
    )
    fit = fit_asymptotic(traj.times, traj.r, window=config.fit_window)
    logger.info("Fitted r(tau): %s", fit)
    return fit


def cmd_entropy_w(config: RunConfig) -> int:
    out = _output_dir(config)
    fit = _driving_fit(config)
    taus = TimeGrid(config.tau_min, config.tau_max, config.tau_step).nodes()
    points = w_series(fit, taus, EntropySpec(config.scalar_curvature, config.r_max))
    path = write_csv(
        out / "w_series.csv",
        ["tau", "W", "f", "dfdtau"],
        [[p.tau for p in points], [p.w for p in points], [p.f for p in points],
         [p.dfdtau for p in points]],
    )
    window = None
    if config.growth_window_start is not None:
        window = (config.growth_window_start, config.growth_window_end)
    try:
        growth = compare_growth(points, fit, window)
    except FitError:
        _sidecar(config, path)
        raise
    summary = write_json(
        out / "w_growth.json", {"fit": fit.to_dict(), "growth": growth.to_dict()}
    )
    _sidecar(config, path, summary)
    print(
        f"entropy-w: {len(points)} points, ln|W| slope {growth.slope:.6g} "
        f"vs kappa1 {growth.kappa1:.6g}"
    )
    return 0


def cmd_closed_form(config: RunConfig) -> int:
    out = _output_dir(config)
    p = ClosedFormParams(
        lam=config.lam,
        beta=config.beta,
        gamma=config.gamma,
        omega=config.omega,
        alpha0=config.alpha0,
        delta0=config.delta0,
        c1=config.cf_c1,
        c2=config.cf_c2,
        c3=config.cf_c3,
        delta_f=config.delta_f,
    )
    grid = _grid(config)
    series = closed_form_series(grid, p)
    path = write_csv(
        out / "closed_form.csv",
        ["tau", "alpha", "delta", "r"],
        [series["tau"], series["alpha"], series["delta"], series["r"]],
    )
    report = closed_form_residual(p, grid, config.residual_target)
    summary = write_json(out / "closed_form_residual.json", report.to_dict())
    _sidecar(config, path, summary)
    print(
        f"closed-form: {len(series['tau'])} samples, max residual "
        f"({report.target}) {report.max_residual:.3g}"
    )
    return 0


COMMAND_HANDLERS: dict[str, Callable[[RunConfig], int]] = {
    "simulate": cmd_simulate,
    "map": cmd_map,
    "lyapunov": cmd_lyapunov,
    "bifurcate": cmd_bifurcate,
    "attractor": cmd_attractor,
    "compare": cmd_compare,
    "sensitivity": cmd_sensitivity,
    "jacobian": cmd_jacobian,
    "entropy-f": cmd_entropy_f,
    "entropy-w": cmd_entropy_w,
    "closed-form": cmd_closed_form,
}


def run(config: RunConfig) -> int:
    """Execute the configured subcommand; returns the process exit code."""
    handler = COMMAND_HANDLERS.get(config.command or "")
    if handler is None:
        print(f"error: unknown subcommand {config.command!r}", file=sys.stderr)
        return 2
    try:
        return handler(config)
    except DivergenceError as exc:
        print(f"error: {exc} (last finite time {exc.last_finite_time:g})", file=sys.stderr)
        return 1
    except (QuadratureError, FitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # settings that pass validation but do not fit the run (e.g. a grid
        # shorter than one renormalization window)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        sys.exit(2)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        config = _config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
    sys.exit(run(config))


if __name__ == "__main__":
    main()
