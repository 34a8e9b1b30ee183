"""W-functional of a spatially constant, time-dependent f(τ) and its growth rate.

With f(τ) = c₁e^{κ₁τ} + c₂e^{κ₂τ} and |∇f|² read as g² = (df/dτ)², the
radial integrand is r² times the r-independent factor

    X(τ) = (τ (R + g²) + f − 3) e^{−f}

so W over the ball of radius r_max is (r_max³/3)·X(τ). Both that product and
an adaptive quadrature of r²·X are evaluated; they must agree.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.stats import linregress

from ..analysis.fitting import AsymptoticFit
from ..errors import FitError
from .functionals import EntropySpec

logger = logging.getLogger(__name__)

CROSS_CHECK_TOLERANCE = 1e-10
PRE_SUPPRESSION_F = 1.0


@dataclass(frozen=True)
class WPoint:
    """One row of the W-series CSV."""
    tau: float
    w: float
    f: float
    dfdtau: float
    suppressed: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


@functools.lru_cache(maxsize=1)
def _log_gradient_reading() -> None:
    logger.info(
        "W-functional uses (df/dtau)^2 in place of |grad f|^2; "
        "f is spatially constant, so the spatial gradient would vanish"
    )


def _factor(fit: AsymptoticFit, tau: float, R: float) -> tuple[float, float, float, bool]:
    """(X(τ), f, g, suppressed) where suppressed means e^{−f} underflowed."""
    f = float(fit.value(tau))
    g = float(fit.derivative(tau))
    # exp(-745) is below the smallest subnormal double
    if not math.isfinite(f) or f > 745.0:
        return 0.0, f, g, True
    with np.errstate(over="ignore"):
        exp_neg_f = float(np.exp(-f))
    return (tau * (R + g * g) + f - 3.0) * exp_neg_f, f, g, False


def w_functional_quadrature(fit: AsymptoticFit, tau: float, spec: EntropySpec) -> float:
    """W by adaptive quadrature of r²·X(τ) over [0, r_max]."""
    factor, _, _, _ = _factor(fit, tau, spec.scalar_curvature)
    value, _ = quad(lambda r: r * r * factor, 0.0, spec.r_max, epsabs=0.0, epsrel=1e-12)
    return float(value)


def w_point(fit: AsymptoticFit, tau: float, spec: EntropySpec) -> WPoint:
    _log_gradient_reading()
    factor, f, g, suppressed = _factor(fit, tau, spec.scalar_curvature)
    if suppressed:
        logger.debug("e^{-f} underflow at tau=%g (f=%g); W set to 0", tau, f)
        return WPoint(tau, 0.0, f, g, True)
    w = (spec.r_max**3 / 3.0) * factor
    check = w_functional_quadrature(fit, tau, spec)
    if abs(w - check) > CROSS_CHECK_TOLERANCE * max(abs(w), 1e-300):
        logger.warning(
            "W closed form %.17g and quadrature %.17g disagree at tau=%g", w, check, tau
        )
    return WPoint(tau, w, f, g, False)


def w_functional(fit: AsymptoticFit, tau: float, spec: EntropySpec) -> float:
    """W(τ) over the ball of radius ``spec.r_max``."""
    return w_point(fit, tau, spec).w


def w_series(fit: AsymptoticFit, taus: Sequence[float], spec: EntropySpec) -> list[WPoint]:
    points = [w_point(fit, float(t), spec) for t in taus]
    n_suppressed = sum(p.suppressed for p in points)
    if n_suppressed:
        logger.warning("%d of %d W values suppressed by e^{-f} underflow", n_suppressed, len(points))
    return points


def entropy_growth_rate(
    taus: Sequence[float],
    ws: Sequence[float],
    window: Optional[tuple[float, float]] = None,
    f_values: Optional[Sequence[float]] = None,
) -> float:
    """Slope of ln|W| against τ.

    The window is ``window`` when given, else the points with f < 1 when
    ``f_values`` is given, else everything. W must keep one strict sign
    inside the window.

    Raises:
        FitError: fewer than two points, or W zero/sign-changing in the window.
    """
    taus = np.asarray(taus, dtype=float)
    ws = np.asarray(ws, dtype=float)
    if window is not None:
        mask = (taus >= window[0]) & (taus <= window[1])
    elif f_values is not None:
        mask = np.asarray(f_values, dtype=float) < PRE_SUPPRESSION_F
    else:
        mask = np.ones(len(taus), dtype=bool)

    t, w = taus[mask], ws[mask]
    if len(t) < 2:
        raise FitError(f"need at least two points in the growth window, got {len(t)}")
    if not (np.all(w > 0) or np.all(w < 0)):
        raise FitError("W must be non-zero and of one sign over the growth window")
    return float(linregress(t, np.log(np.abs(w))).slope)


@dataclass(frozen=True)
class GrowthComparison:
    slope: float
    kappa1: float
    window: tuple[float, float]

    @property
    def relative_gap(self) -> float:
        return abs(self.slope - self.kappa1) / abs(self.kappa1) if self.kappa1 else math.inf

    def to_dict(self) -> dict:
        out = asdict(self)
        out["relative_gap"] = self.relative_gap
        return out


def compare_growth(
    points: Sequence[WPoint], fit: AsymptoticFit, window: Optional[tuple[float, float]] = None
) -> GrowthComparison:
    """Fitted growth rate of W next to κ₁ of the driving fit."""
    taus = [p.tau for p in points]
    ws = [p.w for p in points]
    fs = [p.f for p in points]
    slope = entropy_growth_rate(taus, ws, window=window, f_values=fs)
    if window is None:
        chosen = [t for t, f in zip(taus, fs) if f < PRE_SUPPRESSION_F]
        window = (min(chosen), max(chosen))
    return GrowthComparison(slope, fit.kappa1, window)
