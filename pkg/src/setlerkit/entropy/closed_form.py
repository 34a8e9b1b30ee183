"""Separable closed-form solutions for α(τ), δ(τ) and r(τ).

Freezing δ = δ₀ in the α-equation (and α = α₀ in the δ-equation) gives

    α(τ) = 2 atan(exp(λ cosδ₀ τ − (β/ω) cos ωτ + C₁))
    δ(τ) = 2 atan(exp(λ cosα₀ τ + (γ/ω) sin ωτ + C₂))

These solve dα/dτ = sinα (λ cosδ₀ + β sin ωτ), not the forced equation with
an additive forcing term; ``closed_form_residual`` can check either one.
r(τ) is the integral of its rate along the closed-form angles.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.integrate import quad

from ..errors import QuadratureError
from ..interfaces import TimeGrid

logger = logging.getLogger(__name__)

ResidualTarget = Literal["separable", "full"]


@dataclass(frozen=True)
class ClosedFormParams:
    """Constants of the separable solutions.

    ``alpha0`` and ``delta0`` are the frozen coordinates; ``c1``, ``c2``,
    ``c3`` the integration constants of α, δ and r.
    """
    lam: float
    beta: float
    gamma: float
    omega: float
    alpha0: float = 0.0
    delta0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    delta_f: float = 0.0

    def __post_init__(self):
        for name in ("lam", "beta", "gamma", "omega", "alpha0", "delta0", "c1", "c2", "c3",
                     "delta_f"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.omega == 0:
            raise ValueError("omega must be non-zero for the closed-form solutions")


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    n_points: int
    skipped: int
    target: ResidualTarget

    def to_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "n_points": self.n_points,
            "skipped": self.skipped,
            "target": self.target,
        }


def _scalar_or_array(value: np.ndarray, like):
    return float(value) if np.ndim(like) == 0 else value


def _alpha_exponent(tau, p: ClosedFormParams):
    return p.lam * math.cos(p.delta0) * tau - (p.beta / p.omega) * np.cos(p.omega * tau) + p.c1


def _delta_exponent(tau, p: ClosedFormParams):
    return p.lam * math.cos(p.alpha0) * tau + (p.gamma / p.omega) * np.sin(p.omega * tau) + p.c2


def _two_atan_exp(exponent, what: str):
    with np.errstate(over="ignore"):
        e = np.exp(exponent)
    if np.any(np.isinf(e)):
        logger.warning("%s exponent overflowed; value saturated at pi", what)
    return 2.0 * np.arctan(e)


def closed_form_alpha(tau, p: ClosedFormParams):
    """α(τ); accepts a scalar or an array of times."""
    return _scalar_or_array(_two_atan_exp(_alpha_exponent(np.asarray(tau, float), p), "alpha"), tau)


def closed_form_delta(tau, p: ClosedFormParams):
    """δ(τ); accepts a scalar or an array of times."""
    return _scalar_or_array(_two_atan_exp(_delta_exponent(np.asarray(tau, float), p), "delta"), tau)


def closed_form_alpha_rate(tau, p: ClosedFormParams):
    """Analytic dα/dτ = sech(E)·E′ with E the α exponent."""
    tau = np.asarray(tau, float)
    exponent = _alpha_exponent(tau, p)
    e_prime = p.lam * math.cos(p.delta0) + p.beta * np.sin(p.omega * tau)
    with np.errstate(over="ignore"):
        sech = 1.0 / np.cosh(exponent)
    return sech * e_prime


def closed_form_residual(
    p: ClosedFormParams, tau_grid: TimeGrid, ode: ResidualTarget = "separable"
) -> ResidualReport:
    """Max residual of the closed-form α against the separable or the full ODE.

    Grid points where α is exactly 0 or π (sin α = 0 analytically) are
    skipped and counted.
    """
    taus = tau_grid.nodes()
    alpha = closed_form_alpha(taus, p)
    rate = closed_form_alpha_rate(taus, p)
    usable = (alpha != 0.0) & (alpha != math.pi)
    skipped = int(np.count_nonzero(~usable))
    if skipped:
        logger.warning("skipped %d grid point(s) where alpha hits 0 or pi", skipped)

    forcing = p.beta * np.sin(p.omega * taus)
    if ode == "separable":
        rhs = np.sin(alpha) * (p.lam * math.cos(p.delta0) + forcing)
    elif ode == "full":
        rhs = p.lam * np.sin(alpha) * math.cos(p.delta0) + forcing
    else:
        raise ValueError(f"ode must be 'separable' or 'full', got {ode!r}")

    residual = np.abs(rate - rhs)[usable]
    max_residual = float(residual.max()) if len(residual) else 0.0
    return ResidualReport(max_residual, len(taus), skipped, ode)


def _r_rate(s: float, p: ClosedFormParams) -> float:
    alpha = closed_form_alpha(s, p)
    delta = closed_form_delta(s, p)
    return p.lam * (math.sin(delta) * math.cos(alpha)) ** 2 + p.delta_f * math.sin(p.omega * s)


def closed_form_r(tau, p: ClosedFormParams, epsabs: float = 1e-12, epsrel: float = 1e-10):
    """r(τ) = C₃ + ∫₀^τ [λ (sin δ cos α)² + δ_f sin ωs] ds by adaptive quadrature.

    Array input is integrated piecewise between consecutive sorted times.
    """
    taus = np.atleast_1d(np.asarray(tau, float))
    order = np.argsort(taus)
    out = np.empty_like(taus)
    total, prev = 0.0, 0.0
    for idx in order:
        upper = float(taus[idx])
        value, err, *rest = quad(
            _r_rate, prev, upper, args=(p,), epsabs=epsabs, epsrel=epsrel, limit=200,
            full_output=1,
        )
        if len(rest) > 1:
            raise QuadratureError(
                f"r(tau) quadrature on [{prev}, {upper}] did not converge: {rest[1]}",
                achieved_error=err,
                requested_error=max(epsabs, epsrel * abs(value)),
            )
        total += value
        prev = upper
        out[idx] = p.c3 + total
    return float(out[0]) if np.ndim(tau) == 0 else out


def closed_form_series(grid: TimeGrid, p: ClosedFormParams) -> dict[str, np.ndarray]:
    """α, δ and r sampled on every grid node."""
    taus = grid.nodes()
    return {
        "tau": taus,
        "alpha": closed_form_alpha(taus, p),
        "delta": closed_form_delta(taus, p),
        "r": closed_form_r(taus, p),
    }
