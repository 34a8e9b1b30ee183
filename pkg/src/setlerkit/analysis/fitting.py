"""Asymptotic exponential fits c₁e^{κ₁τ} + c₂e^{κ₂τ}.

The fit runs on |value| over the tail of a series, in a time coordinate
shifted to the start of the tail. A single exponential is fitted first (log-
linear regression refined by nonlinear least squares); the two-term model is
kept only when it converges to distinct rates and clearly beats the single
term. ``tail_slopes`` reads the linear trend over the end of a series.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import curve_fit

from ..errors import FitError

logger = logging.getLogger(__name__)

MIN_TAIL_POINTS = 20
EXACT_FIT_TOLERANCE = 1e-9
MIN_IMPROVEMENT = 0.5


@dataclass(frozen=True)
class AsymptoticFit:
    """Constants of c₁e^{κ₁τ} + c₂e^{κ₂τ} with κ₁ ≥ κ₂.

    Attributes:
        residual: relative RMS misfit over the fitted tail.
        sign: sign of the original series (the fit is of its magnitude).
        single: True when the single-exponential fallback was used
            (then c2 = 0 and kappa2 = kappa1).
    """
    c1: float
    kappa1: float
    c2: float = 0.0
    kappa2: float = 0.0
    residual: float = 0.0
    sign: int = 1
    single: bool = False

    def value(self, tau):
        """f(τ) = c₁e^{κ₁τ} + c₂e^{κ₂τ}."""
        with np.errstate(over="ignore"):
            return self.c1 * np.exp(self.kappa1 * tau) + self.c2 * np.exp(self.kappa2 * tau)

    def derivative(self, tau):
        """df/dτ = c₁κ₁e^{κ₁τ} + c₂κ₂e^{κ₂τ}."""
        with np.errstate(over="ignore"):
            return (
                self.c1 * self.kappa1 * np.exp(self.kappa1 * tau)
                + self.c2 * self.kappa2 * np.exp(self.kappa2 * tau)
            )

    def to_dict(self) -> dict:
        return asdict(self)


def _one_exp(t, c, k):
    return c * np.exp(k * t)


def _two_exp(t, c1, k1, c2, k2):
    return c1 * np.exp(k1 * t) + c2 * np.exp(k2 * t)


def _relative_rms(model: np.ndarray, y: np.ndarray) -> float:
    return float(np.sqrt(np.mean(((model - y) / y) ** 2)))


def _loglinear(t: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(t, np.log(y), 1)
    return float(math.exp(intercept)), float(slope)


def _fit_single(t: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    c, k = _loglinear(t, y)
    residual = _relative_rms(_one_exp(t, c, k), y)
    if residual > EXACT_FIT_TOLERANCE:
        try:
            (c_nl, k_nl), _ = curve_fit(_one_exp, t, y, p0=(c, k), sigma=y, maxfev=10000)
            nl_residual = _relative_rms(_one_exp(t, c_nl, k_nl), y)
            if np.isfinite(nl_residual) and nl_residual < residual:
                c, k, residual = float(c_nl), float(k_nl), nl_residual
        except (RuntimeError, ValueError) as exc:
            logger.debug("single-exponential refinement failed: %s", exc)
    return c, k, residual


def _fit_double(t: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float, float] | None:
    third = max(3, len(t) // 3)
    c1, k1 = _loglinear(t[-third:], y[-third:])
    rest = y[:third] - _one_exp(t[:third], c1, k1)
    positive = rest > 0
    if positive.sum() >= 3:
        c2, k2 = _loglinear(t[:third][positive], rest[positive])
    else:
        c2, k2 = float(y[0] - c1), k1 - 1.0
    try:
        popt, pcov = curve_fit(
            _two_exp, t, y, p0=(c1, k1, c2, k2), sigma=y, maxfev=20000
        )
    except (RuntimeError, ValueError) as exc:
        logger.debug("two-term fit failed: %s", exc)
        return None
    if not (np.all(np.isfinite(popt)) and np.all(np.isfinite(pcov))):
        return None
    c1, k1, c2, k2 = (float(v) for v in popt)
    if abs(k1 - k2) < 1e-6:
        return None
    return c1, k1, c2, k2, _relative_rms(_two_exp(t, *popt), y)


def fit_asymptotic(times, values, window: float = 1.0) -> AsymptoticFit:
    """Least-squares fit of c₁e^{κ₁τ} + c₂e^{κ₂τ} to the last ``window`` fraction.

    Raises:
        FitError: fewer than 20 tail points, or a tail that is not of one
            strict sign.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if not 0 < window <= 1:
        raise ValueError(f"window must be in (0, 1], got {window}")
    start = int(math.floor(len(times) * (1.0 - window)))
    tau, y = times[start:], values[start:]
    if len(tau) < MIN_TAIL_POINTS:
        raise FitError(f"need at least {MIN_TAIL_POINTS} tail points, got {len(tau)}")

    if np.all(y > 0):
        sign = 1
    elif np.all(y < 0):
        sign, y = -1, -y
    else:
        raise FitError("tail values must be non-zero and of one sign")

    tau0 = float(tau[0])
    t = tau - tau0
    c, k, residual = _fit_single(t, y)
    result = (c, k, 0.0, k, residual, True)
    if residual > EXACT_FIT_TOLERANCE:
        double = _fit_double(t, y)
        if double is not None and double[4] < MIN_IMPROVEMENT * residual:
            c1, k1, c2, k2, res2 = double
            if k2 > k1:
                c1, k1, c2, k2 = c2, k2, c1, k1
            result = (c1, k1, c2, k2, res2, False)
        else:
            logger.info("two-term fit degenerate; using single exponential")

    c1, k1, c2, k2, residual, single = result
    # back to the caller's time origin
    with np.errstate(over="ignore", invalid="ignore"):
        c1 = c1 * float(np.exp(-k1 * tau0))
        if c2 != 0.0:
            c2 = c2 * float(np.exp(-k2 * tau0))
    if not (math.isfinite(c1) and math.isfinite(c2)):
        raise FitError(
            f"fitted coefficients overflow when moved from tau={tau0:g} to the origin"
        )
    return AsymptoticFit(c1, k1, c2, k2, residual, sign, single)


def tail_slopes(times, values, fraction: float = 0.2) -> np.ndarray:
    """Least-squares slope of each column of ``values`` over the last ``fraction`` of samples.

    ``values`` may be a single series or an (N, k) array; the result has one
    slope per column. Used to read the long-run trend of α, δ and r.

    Raises:
        FitError: fewer than two samples in the tail.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    if len(times) != len(values):
        raise ValueError(f"times and values differ in length: {len(times)} vs {len(values)}")
    start = int(math.floor(len(times) * (1.0 - fraction)))
    tau = times[start:]
    if len(tau) < 2:
        raise FitError(f"need at least 2 tail points for a slope, got {len(tau)}")
    return np.atleast_1d(np.polyfit(tau - tau[0], values[start:], 1)[0])
